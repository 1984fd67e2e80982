#include "mpd/predicate.hpp"

namespace mpd {

Predicate::Predicate(PosetPtr poset, std::vector<ExtRat> values, RangeMode mode)
    : poset_(std::move(poset)), values_(std::move(values)), mode_(mode) {
  const int n = poset_->size();
  if (static_cast<int>(values_.size()) != n)
    fail(Errc::MalformedInput, "predicate needs one value per element");
  for (const auto& v : values_) {
    if (!v.is_infinite() && v.finite() < 0)
      fail(Errc::MalformedInput, "predicate values must be nonnegative");
    if (mode_ == RangeMode::Unit && (v.is_infinite() || v.finite() > 1))
      fail(Errc::ModeMismatch, "unit-mode predicate has a value outside [0,1]");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (poset_->leq(i, j) && !(at(i) <= at(j)))
        fail(Errc::NonMonotonePredicate,
             "f(" + poset_->name(i) + ") > f(" + poset_->name(j) + ") although " +
                 poset_->name(i) + " <= " + poset_->name(j));
}

Predicate Predicate::constant(PosetPtr poset, const ExtRat& v, RangeMode mode) {
  const int n = poset->size();
  return Predicate(std::move(poset), std::vector<ExtRat>(static_cast<size_t>(n), v), mode);
}

Predicate Predicate::indicator(PosetPtr poset, UpSet u, RangeMode mode) {
  const int n = poset->size();
  std::vector<ExtRat> vals;
  vals.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) vals.emplace_back(Rat(u.contains(i) ? 1 : 0));
  return Predicate(std::move(poset), std::move(vals), mode);
}

Predicate pred_add(const Predicate& f, const Predicate& g) {
  require_same_poset(f.poset(), g.poset(), "pred_add");
  std::vector<ExtRat> vals;
  vals.reserve(static_cast<size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) vals.push_back(f.at(i) + g.at(i));
  return Predicate(f.poset(), std::move(vals), RangeMode::Extended);
}

Predicate pred_scale(const Rat& r, const Predicate& f) {
  if (r < 0) fail(Errc::ScalarOutOfRange, "pred_scale: negative scalar");
  std::vector<ExtRat> vals;
  vals.reserve(static_cast<size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) vals.push_back(r * f.at(i));
  const bool unit_ok = f.mode() == RangeMode::Unit && r <= 1;
  return Predicate(f.poset(), std::move(vals), unit_ok ? RangeMode::Unit : RangeMode::Extended);
}

Predicate pred_mix(const Rat& r, const Predicate& f, const Predicate& g) {
  require_unit_scalar(r, "pred_mix");
  require_same_poset(f.poset(), g.poset(), "pred_mix");
  std::vector<ExtRat> vals;
  vals.reserve(static_cast<size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) vals.push_back(r * f.at(i) + (Rat(1) - r) * g.at(i));
  const bool unit = f.mode() == RangeMode::Unit && g.mode() == RangeMode::Unit;
  return Predicate(f.poset(), std::move(vals), unit ? RangeMode::Unit : RangeMode::Extended);
}

bool pred_leq(const Predicate& f, const Predicate& g) {
  require_same_poset(f.poset(), g.poset(), "pred_leq");
  for (int i = 0; i < f.size(); ++i)
    if (!(f.at(i) <= g.at(i))) return false;
  return true;
}

IntervalPredicate::IntervalPredicate(Predicate lower, Predicate upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_poset(lower_.poset(), upper_.poset(), "IntervalPredicate");
  if (lower_.mode() != upper_.mode())
    fail(Errc::ModeMismatch, "interval predicate ends disagree on range mode");
  if (!pred_leq(lower_, upper_))
    fail(Errc::MalformedInput, "interval predicate needs lower <= upper pointwise");
}

bool interval_contained(const IntervalPredicate& a, const IntervalPredicate& b) {
  return pred_leq(b.lower(), a.lower()) && pred_leq(a.upper(), b.upper());
}

}  // namespace mpd
