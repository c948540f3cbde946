#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace genmi {

// Morphological symbols carried by tokens. Only gender, number and case are
// modeled; every other FEATS key is ignored at parse time.
enum class Gender : std::uint8_t { Unspecified = 0, Masc, Fem, Neut };
enum class GrammNumber : std::uint8_t { Unspecified = 0, Sing, Plur };
enum class CaseKind : std::uint8_t {
  Unspecified = 0,
  Nom,
  Acc,
  Gen,
  Dat,
  Ins,
  Loc,
  Voc,
  Other
};

// A case value. `other_label` is set only for CaseKind::Other and preserves
// the surface value (e.g. "Par", "Ela") so nothing is lost on round-trip.
struct GrammCase {
  CaseKind kind = CaseKind::Unspecified;
  std::string other_label;

  static GrammCase other(std::string label) {
    return GrammCase{CaseKind::Other, std::move(label)};
  }
  bool specified() const { return kind != CaseKind::Unspecified; }
  friend auto operator<=>(const GrammCase&, const GrammCase&) = default;
};

struct MorphFeatures {
  Gender gender = Gender::Unspecified;
  GrammNumber number = GrammNumber::Unspecified;
  GrammCase gram_case;

  friend auto operator<=>(const MorphFeatures&, const MorphFeatures&) = default;
};

std::string_view to_string(Gender g);
std::string_view to_string(GrammNumber n);
std::string to_string(const GrammCase& c);

// Raised by parse_feats in strict mode on a segment with no '='.
class FeatsError : public std::runtime_error {
 public:
  explicit FeatsError(const std::string& what) : std::runtime_error(what) {}
};

// Parse a CoNLL-U FEATS column. "_" (or empty) yields all-unspecified.
// Unknown keys are skipped; unknown Gender/Number values are treated as
// unspecified; unknown Case values become GrammCase::other(value).
MorphFeatures parse_feats(std::string_view feats, bool strict = false);

// Canonical FEATS rendering (alphabetical key order), "_" when empty.
std::string feats_to_string(const MorphFeatures& f);

}  // namespace genmi
