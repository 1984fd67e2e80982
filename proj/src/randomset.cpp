#include "mpd/randomset.hpp"

#include <numeric>

#include "mpd/errors.hpp"

namespace mpd {

namespace {

constexpr int kMaxGround = 20;  // bitmask keys; far beyond what callers use

void check_ground(int n) {
  if (n < 1) fail(Errc::MalformedInput, "random set: ground set must be nonempty");
  if (n > kMaxGround) fail(Errc::TooLarge, "random set: ground set larger than 20");
}

std::string element_name(int i) {
  // a, b, ..., z — kMaxGround keeps us inside the alphabet.
  return std::string(1, static_cast<char>('a' + i));
}

std::string subset_str(uint32_t mask, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) {
      if (!first) out += ",";
      out += element_name(i);
      first = false;
    }
  return out + "}";
}

std::string counts_str(const std::vector<int>& counts) {
  std::string out = "⟨";
  bool first = true;
  for (int i = 0; i < static_cast<int>(counts.size()); ++i)
    for (int k = 0; k < counts[static_cast<size_t>(i)]; ++k) {
      if (!first) out += ",";
      out += element_name(i);
      first = false;
    }
  return out + "⟩";
}

template <class Map>
void check_distribution(const Map& dist, const char* what) {
  Rat total = 0;
  for (const auto& [key, p] : dist) {
    if (p < 0) fail(Errc::MalformedInput, std::string(what) + ": negative probability");
    total += p;
  }
  if (total != 1) fail(Errc::MalformedInput, std::string(what) + ": probabilities sum to " + rat_to_string(total) + ", not 1");
}

template <class Map>
Map drop_zeros(Map dist) {
  for (auto it = dist.begin(); it != dist.end();)
    it = (it->second == 0) ? dist.erase(it) : std::next(it);
  return dist;
}

void check_same_ground(int a, int b, const char* what) {
  if (a != b) fail(Errc::GroundSetMismatch, std::string(what) + ": operands live over different ground sets");
}

}  // namespace

RandomSetElement::RandomSetElement(int ground_size, std::map<uint32_t, Rat> dist)
    : ground_size_(ground_size), dist_(drop_zeros(std::move(dist))) {
  check_ground(ground_size);
  const uint32_t full = (ground_size >= 32) ? ~0u : ((1u << ground_size) - 1);
  for (const auto& [mask, p] : dist_) {
    (void)p;
    if (mask == 0) fail(Errc::MalformedInput, "random set: the empty set is not a legal value");
    if (mask & ~full) fail(Errc::MalformedInput, "random set: subset mentions elements outside the ground set");
  }
  check_distribution(dist_, "random set");
}

RandomSetElement RandomSetElement::dirac(int ground_size, uint32_t subset_mask) {
  return RandomSetElement(ground_size, {{subset_mask, Rat(1)}});
}

Rat RandomSetElement::prob(uint32_t subset_mask) const {
  auto it = dist_.find(subset_mask);
  return it == dist_.end() ? Rat(0) : it->second;
}

std::string RandomSetElement::str() const {
  std::string out;
  for (const auto& [mask, p] : dist_) {
    if (!out.empty()) out += " + ";
    out += rat_to_string(p) + "·" + subset_str(mask, ground_size_);
  }
  return out;
}

RandomSetElement rs_unit(int ground_size, int element) {
  check_ground(ground_size);
  if (element < 0 || element >= ground_size)
    fail(Errc::MalformedInput, "rs_unit: element outside the ground set");
  return RandomSetElement::dirac(ground_size, 1u << element);
}

RandomSetElement rs_convex(const Rat& r, const RandomSetElement& d1, const RandomSetElement& d2) {
  require_unit_scalar(r, "rs_convex");
  check_same_ground(d1.ground_size(), d2.ground_size(), "rs_convex");
  std::map<uint32_t, Rat> out;
  for (const auto& [mask, p] : d1.dist()) out[mask] += r * p;
  for (const auto& [mask, p] : d2.dist()) out[mask] += (Rat(1) - r) * p;
  return RandomSetElement(d1.ground_size(), std::move(out));
}

RandomSetElement rs_union(const RandomSetElement& d1, const RandomSetElement& d2) {
  check_same_ground(d1.ground_size(), d2.ground_size(), "rs_union");
  std::map<uint32_t, Rat> out;
  for (const auto& [a, p] : d1.dist())
    for (const auto& [b, q] : d2.dist()) out[a | b] += p * q;
  return RandomSetElement(d1.ground_size(), std::move(out));
}

MultisetElement::MultisetElement(int ground_size, std::map<std::vector<int>, Rat> dist)
    : ground_size_(ground_size), dist_(drop_zeros(std::move(dist))) {
  check_ground(ground_size);
  for (const auto& [counts, p] : dist_) {
    (void)p;
    if (static_cast<int>(counts.size()) != ground_size)
      fail(Errc::MalformedInput, "multiset: count vector length differs from the ground set size");
    int total = 0;
    for (int c : counts) {
      if (c < 0) fail(Errc::MalformedInput, "multiset: negative multiplicity");
      total += c;
    }
    if (total == 0) fail(Errc::MalformedInput, "multiset: the empty multiset is not a legal value");
  }
  check_distribution(dist_, "multiset");
}

MultisetElement MultisetElement::dirac(int ground_size, std::vector<int> counts) {
  std::map<std::vector<int>, Rat> d;
  d.emplace(std::move(counts), Rat(1));
  return MultisetElement(ground_size, std::move(d));
}

std::string MultisetElement::str() const {
  std::string out;
  for (const auto& [counts, p] : dist_) {
    if (!out.empty()) out += " + ";
    out += rat_to_string(p) + "·" + counts_str(counts);
  }
  return out;
}

MultisetElement ms_unit(int ground_size, int element) {
  check_ground(ground_size);
  if (element < 0 || element >= ground_size)
    fail(Errc::MalformedInput, "ms_unit: element outside the ground set");
  std::vector<int> counts(static_cast<size_t>(ground_size), 0);
  counts[static_cast<size_t>(element)] = 1;
  return MultisetElement::dirac(ground_size, std::move(counts));
}

MultisetElement ms_convex(const Rat& r, const MultisetElement& d1, const MultisetElement& d2) {
  require_unit_scalar(r, "ms_convex");
  check_same_ground(d1.ground_size(), d2.ground_size(), "ms_convex");
  std::map<std::vector<int>, Rat> out;
  for (const auto& [counts, p] : d1.dist()) out[counts] += r * p;
  for (const auto& [counts, p] : d2.dist()) out[counts] += (Rat(1) - r) * p;
  return MultisetElement(d1.ground_size(), std::move(out));
}

MultisetElement ms_union(const MultisetElement& d1, const MultisetElement& d2) {
  check_same_ground(d1.ground_size(), d2.ground_size(), "ms_union");
  std::map<std::vector<int>, Rat> out;
  for (const auto& [a, p] : d1.dist())
    for (const auto& [b, q] : d2.dist()) {
      std::vector<int> sum(a.size());
      for (size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
      out[std::move(sum)] += p * q;
    }
  return MultisetElement(d1.ground_size(), std::move(out));
}

}  // namespace mpd
