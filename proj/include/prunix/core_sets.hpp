#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prunix/error.hpp"

namespace prunix {

// Rule-driven work is capped at 30 elements, full 2^n enumeration at 20.
inline constexpr int kMaxGround = 30;
inline constexpr int kMaxEnumeration = 20;

/// A subset of a ground set, stored as a membership bit vector.
///
/// The set does not remember its ground set; operations that need the
/// universe (complement, formatting) take a GroundSet explicitly. Bits at or
/// beyond the ground size are never set by any library routine.
class ElementSet {
 public:
  using Bits = std::uint32_t;

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(Bits bits) : bits_(bits) {}
  ElementSet(std::initializer_list<int> elements) {
    for (int e : elements) bits_ |= Bits{1} << e;
  }

  static constexpr ElementSet singleton(int e) { return ElementSet(Bits{1} << e); }
  static constexpr ElementSet prefix(int n) {
    return ElementSet(n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1);
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int e) const { return (bits_ >> e) & 1U; }

  constexpr ElementSet with(int e) const { return ElementSet(bits_ | (Bits{1} << e)); }
  constexpr ElementSet without(int e) const { return ElementSet(bits_ & ~(Bits{1} << e)); }

  constexpr bool subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool proper_subset_of(ElementSet other) const {
    return subset_of(other) && bits_ != other.bits_;
  }
  constexpr bool intersects(ElementSet other) const { return (bits_ & other.bits_) != 0; }

  // Lowest member; undefined on the empty set.
  constexpr int first() const { return std::countr_zero(bits_); }

  std::vector<int> elements() const;

  template <typename F>
  void for_each(F&& f) const {
    for (Bits b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) { return ElementSet(a.bits_ | b.bits_); }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) { return ElementSet(a.bits_ & b.bits_); }
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) { return ElementSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(ElementSet a, ElementSet b) = default;

 private:
  Bits bits_ = 0;
};

// Canonical order: cardinality first, then the bits read as an integer.
struct CanonicalLess {
  constexpr bool operator()(ElementSet a, ElementSet b) const {
    int sa = a.size();
    int sb = b.size();
    return sa != sb ? sa < sb : a.bits() < b.bits();
  }
};

/// Ordered, labelled ground set E.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  // Labels "a", "b", ... (n <= 26).
  static GroundSet letters(int n);
  // Labels "1", "2", ..., "n".
  static GroundSet numbered(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int e) const { return labels_.at(static_cast<std::size_t>(e)); }
  bool has_label(std::string_view label) const;
  int index(std::string_view label) const;

  ElementSet full() const { return ElementSet::prefix(size()); }
  ElementSet complement(ElementSet a) const { return full() - a; }

  ElementSet set_of(std::span<const std::string> labels) const;
  ElementSet set_of(std::initializer_list<std::string_view> labels) const;
  // Parses "a,c,e", "{a,c,e}" or "" (empty set).
  ElementSet parse_set(std::string_view text) const;
  std::vector<std::string> labels_of(ElementSet a) const;
  // "{a,c,e}"
  std::string format(ElementSet a) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

/// Deduplicated collection of subsets of one ground set, in canonical order.
class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(GroundSet ground, std::vector<ElementSet> members);

  const GroundSet& ground() const { return ground_; }
  const std::vector<ElementSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(ElementSet a) const;
  // Position in canonical order, or -1.
  long index_of(ElementSet a) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.ground_ == b.ground_ && a.members_ == b.members_;
  }

 private:
  GroundSet ground_;
  std::vector<ElementSet> members_;
};

/// A word with no repeated letter; letters are element indices.
class SimpleWord {
 public:
  SimpleWord() = default;
  explicit SimpleWord(std::vector<int> letters);

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  ElementSet support() const { return support_; }
  SimpleWord prefix(std::size_t len) const;
  // Appending a letter already in the word throws.
  SimpleWord extended(int letter) const;

  friend bool operator==(const SimpleWord& a, const SimpleWord& b) { return a.letters_ == b.letters_; }
  friend auto operator<=>(const SimpleWord& a, const SimpleWord& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<int> letters_;
  ElementSet support_;
};

std::string format_word(const GroundSet& ground, const SimpleWord& w);
SimpleWord parse_word(const GroundSet& ground, std::span<const std::string> labels);

/// A set with a designated root element, used both for circuits and paths.
struct RootedSet {
  ElementSet set;
  int root = 0;

  RootedSet() = default;
  RootedSet(ElementSet s, int r);

  friend bool operator==(const RootedSet&, const RootedSet&) = default;
};

bool rooted_less(const RootedSet& a, const RootedSet& b);

SetFamily boolean_lattice(const GroundSet& ground);

// JSON set-family format: {"ground":[...],"sets":[[...],...]}.
SetFamily parse_family(std::string_view text);
std::string serialize_family(const SetFamily& f);

// Rooted-set JSON: {"ground":[...],"<key>":[{"set":[...],"root":"x"},...]}
// where key is "rooted" for circuits or "paths" for paths.
struct RootedList {
  GroundSet ground;
  std::vector<RootedSet> sets;
};
RootedList parse_rooted(std::string_view text, std::string_view key = "rooted");
std::string serialize_rooted(const GroundSet& ground, std::span<const RootedSet> sets,
                             std::string_view key = "rooted");

// Word-list JSON: {"ground":[...],"words":[["a","b"],...]}.
struct WordList {
  GroundSet ground;
  std::vector<SimpleWord> words;
};
WordList parse_words(std::string_view text);

}  // namespace prunix
