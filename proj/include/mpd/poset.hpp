#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mpd/errors.hpp"

namespace mpd {

// An upward-closed subset of a poset, as a bitmask over element indices.
// Bit i corresponds to elements()[i]; the owning poset gives it meaning.
struct UpSet {
  uint32_t bits = 0;

  bool contains(int i) const { return (bits >> i) & 1u; }
  friend bool operator==(const UpSet& a, const UpSet& b) { return a.bits == b.bits; }
};

// A finite poset over named elements. The order is the reflexive-transitive
// closure of the declared cover pairs; construction rejects closures that
// would break antisymmetry. Declaration order of elements is the fixed
// tie-break order used for every deterministic choice downstream.
class FinitePoset {
 public:
  static constexpr int kDefaultCap = 16;
  static constexpr int kHardCap = 20;  // bitmask width head-room

  FinitePoset(std::vector<std::string> elements,
              const std::vector<std::pair<std::string, std::string>>& covers,
              int cap = kDefaultCap);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& name(int i) const { return elements_[static_cast<size_t>(i)]; }
  int index_of(const std::string& name) const;  // throws UnknownElement

  bool leq(int i, int j) const { return (up_mask(i) >> j) & 1u; }
  // Bitmask of { j : i <= j }.
  uint32_t up_mask(int i) const { return upmask_[static_cast<size_t>(i)]; }
  uint32_t full_mask() const { return size() == 32 ? ~0u : (1u << size()) - 1u; }

  bool is_upset(uint32_t bits) const;
  UpSet up_closure(uint32_t subset) const;
  UpSet up_closure_of(const std::vector<std::string>& names) const;

  // All up-sets in increasing bitmask order (so {} first, full set last).
  // Enumeration is gated by the construction-time cap.
  const std::vector<UpSet>& upsets() const;

  int cap() const { return cap_; }
  bool same_as(const FinitePoset& other) const {
    return elements_ == other.elements_ && upmask_ == other.upmask_;
  }
  bool discrete() const;

 private:
  std::vector<std::string> elements_;
  std::vector<uint32_t> upmask_;
  int cap_;
  mutable std::vector<UpSet> upsets_;  // lazy cache; value-immutable otherwise
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

// True when the two handles denote the same poset (pointer or structural).
bool same_poset(const PosetPtr& a, const PosetPtr& b);
void require_same_poset(const PosetPtr& a, const PosetPtr& b, const char* where);

// Reads {"elements": [...], "covers": [["a","b"], ...]} (UTF-8 JSON).
PosetPtr parse_poset(const std::string& text, int cap = FinitePoset::kDefaultCap);

}  // namespace mpd
