#include "prunix/core_sets.hpp"

#include <algorithm>

#include "json.hpp"

namespace prunix {

using nlohmann::json;

std::vector<int> ElementSet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](int e) { out.push_back(e); });
  return out;
}

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > static_cast<std::size_t>(kMaxGround)) {
    throw LimitError("ground set has " + std::to_string(labels_.size()) + " elements; limit is " +
                     std::to_string(kMaxGround));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw ParseError("empty element label");
    if (!index_.emplace(labels_[i], static_cast<int>(i)).second) {
      throw ParseError("duplicate label '" + labels_[i] + "'");
    }
  }
}

GroundSet GroundSet::letters(int n) {
  if (n < 0 || n > 26) throw PreconditionError("letters() supports 0..26 elements");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return GroundSet(std::move(labels));
}

GroundSet GroundSet::numbered(int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return GroundSet(std::move(labels));
}

bool GroundSet::has_label(std::string_view label) const {
  return index_.find(std::string(label)) != index_.end();
}

int GroundSet::index(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw ParseError("label not in ground: '" + std::string(label) + "'");
  return it->second;
}

ElementSet GroundSet::set_of(std::span<const std::string> labels) const {
  ElementSet s;
  for (const auto& l : labels) s = s.with(index(l));
  return s;
}

ElementSet GroundSet::set_of(std::initializer_list<std::string_view> labels) const {
  ElementSet s;
  for (auto l : labels) s = s.with(index(l));
  return s;
}

ElementSet GroundSet::parse_set(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw ParseError("unbalanced braces in set '" + std::string(text) + "'");
    text = trim(text.substr(1, text.size() - 2));
  }
  ElementSet s;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    if (item.empty()) throw ParseError("empty label in set");
    s = s.with(index(item));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return s;
}

std::vector<std::string> GroundSet::labels_of(ElementSet a) const {
  std::vector<std::string> out;
  a.for_each([&](int e) { out.push_back(label(e)); });
  return out;
}

std::string GroundSet::format(ElementSet a) const {
  std::string out = "{";
  bool first = true;
  a.for_each([&](int e) {
    if (!first) out += ',';
    out += label(e);
    first = false;
  });
  out += '}';
  return out;
}

SetFamily::SetFamily(GroundSet ground, std::vector<ElementSet> members)
    : ground_(std::move(ground)), members_(std::move(members)) {
  const ElementSet full = ground_.full();
  for (ElementSet m : members_) {
    if (!m.subset_of(full)) throw PreconditionError("family member outside the ground set");
  }
  std::sort(members_.begin(), members_.end(), CanonicalLess{});
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(ElementSet a) const {
  return std::binary_search(members_.begin(), members_.end(), a, CanonicalLess{});
}

long SetFamily::index_of(ElementSet a) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), a, CanonicalLess{});
  if (it == members_.end() || *it != a) return -1;
  return it - members_.begin();
}

SimpleWord::SimpleWord(std::vector<int> letters) : letters_(std::move(letters)) {
  for (int x : letters_) {
    if (x < 0 || x >= kMaxGround) throw PreconditionError("letter out of range");
    if (support_.contains(x)) throw PreconditionError("word is not simple: repeated letter");
    support_ = support_.with(x);
  }
}

SimpleWord SimpleWord::prefix(std::size_t len) const {
  return SimpleWord(std::vector<int>(letters_.begin(),
                                     letters_.begin() + static_cast<long>(std::min(len, letters_.size()))));
}

SimpleWord SimpleWord::extended(int letter) const {
  auto letters = letters_;
  letters.push_back(letter);
  return SimpleWord(std::move(letters));
}

std::string format_word(const GroundSet& ground, const SimpleWord& w) {
  if (w.empty()) return "ε";
  std::string out;
  bool multichar = false;
  for (int x : w.letters()) multichar = multichar || ground.label(x).size() != 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (multichar && i > 0) out += ' ';
    out += ground.label(w.letters()[i]);
  }
  return out;
}

SimpleWord parse_word(const GroundSet& ground, std::span<const std::string> labels) {
  std::vector<int> letters;
  for (const auto& l : labels) letters.push_back(ground.index(l));
  return SimpleWord(std::move(letters));
}

RootedSet::RootedSet(ElementSet s, int r) : set(s), root(r) {
  if (!s.contains(r)) throw PreconditionError("root is not a member of its rooted set");
}

bool rooted_less(const RootedSet& a, const RootedSet& b) {
  if (a.set != b.set) return CanonicalLess{}(a.set, b.set);
  return a.root < b.root;
}

SetFamily boolean_lattice(const GroundSet& ground) {
  const int n = ground.size();
  if (n > kMaxEnumeration) {
    throw LimitError("boolean_lattice: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kMaxEnumeration));
  }
  std::vector<ElementSet> all;
  all.reserve(std::size_t{1} << n);
  for (ElementSet::Bits b = 0; b < (ElementSet::Bits{1} << n); ++b) all.emplace_back(b);
  return SetFamily(ground, std::move(all));
}

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

GroundSet ground_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("ground") || !doc["ground"].is_array()) {
    throw ParseError("document needs a \"ground\" array");
  }
  std::vector<std::string> labels;
  for (const auto& l : doc["ground"]) {
    if (!l.is_string()) throw ParseError("ground labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return GroundSet(std::move(labels));
}

ElementSet set_from_json(const GroundSet& ground, const json& arr) {
  if (!arr.is_array()) throw ParseError("a set must be a list of labels");
  ElementSet s;
  for (const auto& l : arr) {
    if (!l.is_string()) throw ParseError("set members must be label strings");
    s = s.with(ground.index(l.get<std::string>()));
  }
  return s;
}

json labels_json(const GroundSet& ground, ElementSet s) {
  json arr = json::array();
  for (auto& l : ground.labels_of(s)) arr.push_back(l);
  return arr;
}

}  // namespace

SetFamily parse_family(std::string_view text) {
  json doc = parse_json(text);
  GroundSet ground = ground_from_json(doc);
  if (!doc.contains("sets") || !doc["sets"].is_array()) throw ParseError("document needs a \"sets\" array");
  std::vector<ElementSet> members;
  for (const auto& s : doc["sets"]) members.push_back(set_from_json(ground, s));
  return SetFamily(std::move(ground), std::move(members));
}

std::string serialize_family(const SetFamily& f) {
  json doc;
  doc["ground"] = f.ground().labels();
  json sets = json::array();
  for (ElementSet s : f) sets.push_back(labels_json(f.ground(), s));
  doc["sets"] = std::move(sets);
  return doc.dump();
}

RootedList parse_rooted(std::string_view text, std::string_view key) {
  json doc = parse_json(text);
  RootedList out{ground_from_json(doc), {}};
  const std::string k(key);
  if (!doc.contains(k) || !doc[k].is_array()) throw ParseError("document needs a \"" + k + "\" array");
  for (const auto& item : doc[k]) {
    if (!item.is_object() || !item.contains("set") || !item.contains("root") || !item["root"].is_string()) {
      throw ParseError("rooted entries need \"set\" and \"root\"");
    }
    ElementSet s = set_from_json(out.ground, item["set"]);
    int root = out.ground.index(item["root"].get<std::string>());
    if (!s.contains(root)) throw ParseError("root '" + item["root"].get<std::string>() + "' not in its set");
    out.sets.emplace_back(s, root);
  }
  return out;
}

std::string serialize_rooted(const GroundSet& ground, std::span<const RootedSet> sets, std::string_view key) {
  json doc;
  doc["ground"] = ground.labels();
  json arr = json::array();
  for (const auto& r : sets) {
    json item;
    item["set"] = labels_json(ground, r.set);
    item["root"] = ground.label(r.root);
    arr.push_back(std::move(item));
  }
  doc[std::string(key)] = std::move(arr);
  return doc.dump();
}

WordList parse_words(std::string_view text) {
  json doc = parse_json(text);
  WordList out{ground_from_json(doc), {}};
  if (!doc.contains("words") || !doc["words"].is_array()) throw ParseError("document needs a \"words\" array");
  for (const auto& w : doc["words"]) {
    if (!w.is_array()) throw ParseError("a word must be a list of labels");
    std::vector<int> letters;
    for (const auto& l : w) {
      if (!l.is_string()) throw ParseError("word letters must be label strings");
      letters.push_back(out.ground.index(l.get<std::string>()));
    }
    try {
      out.words.emplace_back(std::move(letters));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  return out;
}

}  // namespace prunix
