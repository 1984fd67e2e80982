#include "mpd/poset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace mpd {

FinitePoset::FinitePoset(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& covers,
                         int cap)
    : elements_(std::move(elements)), cap_(std::min(cap, kHardCap)) {
  if (elements_.empty()) fail(Errc::MalformedInput, "poset needs at least one element");
  // Construction only enforces the hard cap (bitmask sanity); the soft cap
  // gates up-set enumeration, so oversize posets fail at upsets(), not here.
  if (static_cast<int>(elements_.size()) > kHardCap)
    fail(Errc::TooLarge, "poset has " + std::to_string(elements_.size()) + " elements, hard cap is " +
                             std::to_string(kHardCap));

  std::set<std::string> seen;
  for (const auto& e : elements_)
    if (!seen.insert(e).second) fail(Errc::DuplicateElement, "element '" + e + "' declared twice");

  const int n = size();
  auto find = [&](const std::string& name) {
    for (int i = 0; i < n; ++i)
      if (elements_[static_cast<size_t>(i)] == name) return i;
    fail(Errc::UnknownElementInCover, "cover mentions undeclared element '" + name + "'");
  };

  // leq[i] as bitmask of successors; start from reflexivity + covers, then
  // close transitively (n passes of mask propagation suffice).
  upmask_.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) upmask_[static_cast<size_t>(i)] = 1u << i;
  for (const auto& [lo, hi] : covers) upmask_[static_cast<size_t>(find(lo))] |= 1u << find(hi);

  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      uint32_t m = upmask_[static_cast<size_t>(i)];
      uint32_t grown = m;
      for (int j = 0; j < n; ++j)
        if ((m >> j) & 1u) grown |= upmask_[static_cast<size_t>(j)];
      if (grown != m) {
        upmask_[static_cast<size_t>(i)] = grown;
        changed = true;
      }
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq(i, j) && leq(j, i))
        fail(Errc::CycleDetected, "covers force " + name(i) + " = " + name(j));
}

int FinitePoset::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (elements_[static_cast<size_t>(i)] == name) return i;
  fail(Errc::UnknownElement, "no element named '" + name + "'");
}

bool FinitePoset::is_upset(uint32_t bits) const {
  for (int i = 0; i < size(); ++i)
    if ((bits >> i) & 1u)
      if ((up_mask(i) & ~bits) != 0) return false;
  return true;
}

UpSet FinitePoset::up_closure(uint32_t subset) const {
  uint32_t out = 0;
  for (int i = 0; i < size(); ++i)
    if ((subset >> i) & 1u) out |= up_mask(i);
  return UpSet{out};
}

UpSet FinitePoset::up_closure_of(const std::vector<std::string>& names) const {
  uint32_t subset = 0;
  for (const auto& nm : names) subset |= 1u << index_of(nm);
  return up_closure(subset);
}

const std::vector<UpSet>& FinitePoset::upsets() const {
  if (!upsets_.empty()) return upsets_;
  if (size() > cap_)
    fail(Errc::TooLarge, "up-set enumeration needs <= " + std::to_string(cap_) +
                             " elements, poset has " + std::to_string(size()));
  const uint64_t total = uint64_t(1) << size();
  std::vector<UpSet> out;
  for (uint64_t bits = 0; bits < total; ++bits)
    if (is_upset(static_cast<uint32_t>(bits))) out.push_back(UpSet{static_cast<uint32_t>(bits)});
  upsets_ = std::move(out);
  return upsets_;
}

bool FinitePoset::discrete() const {
  for (int i = 0; i < size(); ++i)
    if (up_mask(i) != (1u << i)) return false;
  return true;
}

bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  if (a == b) return true;
  return a && b && a->same_as(*b);
}

void require_same_poset(const PosetPtr& a, const PosetPtr& b, const char* where) {
  if (!same_poset(a, b)) fail(Errc::PosetMismatch, std::string(where) + ": operands live on different posets");
}

PosetPtr parse_poset(const std::string& text, int cap) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedInput, std::string("poset JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array())
    fail(Errc::MalformedInput, "poset JSON needs an \"elements\" array");

  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) fail(Errc::MalformedInput, "poset elements must be strings");
    elements.push_back(e.get<std::string>());
  }

  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    if (!j["covers"].is_array()) fail(Errc::MalformedInput, "\"covers\" must be an array of pairs");
    for (const auto& c : j["covers"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
        fail(Errc::MalformedInput, "each cover must be a [lower, upper] pair of strings");
      covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  }
  return std::make_shared<FinitePoset>(std::move(elements), covers, cap);
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::UnknownElementInCover: return "UnknownElementInCover";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::PosetMismatch: return "PosetMismatch";
    case Errc::ScalarOutOfRange: return "ScalarOutOfRange";
    case Errc::NonMonotonePredicate: return "NonMonotonePredicate";
    case Errc::MalformedSystem: return "MalformedSystem";
    case Errc::EmptyGeneratorSet: return "EmptyGeneratorSet";
    case Errc::NotSeparable: return "NotSeparable";
    case Errc::FlavorMismatch: return "FlavorMismatch";
    case Errc::ModeMismatch: return "ModeMismatch";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UndeclaredVariable: return "UndeclaredVariable";
    case Errc::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case Errc::FuelNegative: return "FuelNegative";
    case Errc::GroundSetMismatch: return "GroundSetMismatch";
    case Errc::UnboundOperation: return "UnboundOperation";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Error";
}

}  // namespace mpd
