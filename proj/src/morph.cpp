#include "genmi/morph.hpp"

namespace genmi {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::Masc: return "Masc";
    case Gender::Fem: return "Fem";
    case Gender::Neut: return "Neut";
    case Gender::Unspecified: break;
  }
  return "Unspecified";
}

std::string_view to_string(GrammNumber n) {
  switch (n) {
    case GrammNumber::Sing: return "Sing";
    case GrammNumber::Plur: return "Plur";
    case GrammNumber::Unspecified: break;
  }
  return "Unspecified";
}

std::string to_string(const GrammCase& c) {
  switch (c.kind) {
    case CaseKind::Nom: return "Nom";
    case CaseKind::Acc: return "Acc";
    case CaseKind::Gen: return "Gen";
    case CaseKind::Dat: return "Dat";
    case CaseKind::Ins: return "Ins";
    case CaseKind::Loc: return "Loc";
    case CaseKind::Voc: return "Voc";
    case CaseKind::Other: return c.other_label;
    case CaseKind::Unspecified: break;
  }
  return "Unspecified";
}

namespace {

Gender parse_gender(std::string_view v) {
  if (v == "Masc") return Gender::Masc;
  if (v == "Fem") return Gender::Fem;
  if (v == "Neut") return Gender::Neut;
  return Gender::Unspecified;
}

GrammNumber parse_number(std::string_view v) {
  if (v == "Sing") return GrammNumber::Sing;
  if (v == "Plur") return GrammNumber::Plur;
  return GrammNumber::Unspecified;
}

GrammCase parse_case(std::string_view v) {
  if (v == "Nom") return {CaseKind::Nom, {}};
  if (v == "Acc") return {CaseKind::Acc, {}};
  if (v == "Gen") return {CaseKind::Gen, {}};
  if (v == "Dat") return {CaseKind::Dat, {}};
  if (v == "Ins") return {CaseKind::Ins, {}};
  if (v == "Loc") return {CaseKind::Loc, {}};
  if (v == "Voc") return {CaseKind::Voc, {}};
  return GrammCase::other(std::string(v));
}

}  // namespace

MorphFeatures parse_feats(std::string_view feats, bool strict) {
  MorphFeatures out;
  if (feats.empty() || feats == "_") return out;

  std::size_t pos = 0;
  while (pos <= feats.size()) {
    const std::size_t bar = feats.find('|', pos);
    const std::string_view seg =
        feats.substr(pos, bar == std::string_view::npos ? bar : bar - pos);
    pos = (bar == std::string_view::npos) ? feats.size() + 1 : bar + 1;

    if (seg.empty()) continue;
    const std::size_t eq = seg.find('=');
    if (eq == std::string_view::npos) {
      if (strict) throw FeatsError("malformed FEATS segment: " + std::string(seg));
      continue;
    }
    const std::string_view key = seg.substr(0, eq);
    const std::string_view val = seg.substr(eq + 1);
    if (key == "Gender") {
      out.gender = parse_gender(val);
    } else if (key == "Number") {
      out.number = parse_number(val);
    } else if (key == "Case") {
      out.gram_case = parse_case(val);
    }
    // any other key is ignored
  }
  return out;
}

std::string feats_to_string(const MorphFeatures& f) {
  std::string out;
  const auto append = [&out](std::string_view key, std::string_view val) {
    if (!out.empty()) out += '|';
    out += key;
    out += '=';
    out += val;
  };
  if (f.gram_case.specified()) append("Case", to_string(f.gram_case));
  if (f.gender != Gender::Unspecified) append("Gender", to_string(f.gender));
  if (f.number != GrammNumber::Unspecified) append("Number", to_string(f.number));
  return out.empty() ? "_" : out;
}

}  // namespace genmi
