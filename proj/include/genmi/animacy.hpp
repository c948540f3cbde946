#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace genmi {

enum class Animacy { Animate, Inanimate, Unknown };

std::string_view to_string(Animacy a);

enum class LexiconErrorKind { BadClassLabel, ConflictingDuplicate };

class LexiconError : public std::runtime_error {
 public:
  LexiconError(LexiconErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}
  LexiconErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  LexiconErrorKind kind_;
  std::size_t line_;
};

// Noun lemma -> animate/inanimate map. Lookup of an absent lemma yields
// Unknown, never a default class.
class AnimacyLexicon {
 public:
  // File format: one "lemma<TAB>animate|inanimate" record per line, LF
  // terminated; '#' comment lines and blank lines are allowed. A duplicate
  // lemma with a conflicting class aborts; a consistent duplicate is a no-op.
  static AnimacyLexicon load(std::istream& in);

  Animacy lookup(std::string_view lemma) const {
    const auto it = entries_.find(lemma);
    return it == entries_.end() ? Animacy::Unknown : it->second;
  }
  std::size_t size() const { return entries_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, Animacy, Hash, std::equal_to<>> entries_;
};

template <typename Rec>
struct AnimacyPartition {
  std::vector<Rec> animate;
  std::vector<Rec> inanimate;
  std::size_t discarded = 0;  // records whose noun has Unknown animacy
};

// Routes records by the lexicon class of their noun lemma. The two subsets
// are disjoint and, together with the discarded count, exhaust the input.
template <typename Rec>
AnimacyPartition<Rec> partition_by_animacy(std::span<const Rec> records,
                                           const AnimacyLexicon& lexicon) {
  AnimacyPartition<Rec> out;
  for (const Rec& r : records) {
    switch (lexicon.lookup(r.noun_lemma)) {
      case Animacy::Animate: out.animate.push_back(r); break;
      case Animacy::Inanimate: out.inanimate.push_back(r); break;
      case Animacy::Unknown: ++out.discarded; break;
    }
  }
  return out;
}

}  // namespace genmi
