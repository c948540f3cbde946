#include "genmi/animacy.hpp"

namespace genmi {

std::string_view to_string(Animacy a) {
  switch (a) {
    case Animacy::Animate: return "animate";
    case Animacy::Inanimate: return "inanimate";
    case Animacy::Unknown: break;
  }
  return "unknown";
}

AnimacyLexicon AnimacyLexicon::load(std::istream& in) {
  AnimacyLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LexiconError(LexiconErrorKind::BadClassLabel, line_no,
                         "expected 'lemma<TAB>class'");
    }
    std::string lemma = line.substr(0, tab);
    const std::string_view cls = std::string_view(line).substr(tab + 1);

    Animacy a;
    if (cls == "animate") {
      a = Animacy::Animate;
    } else if (cls == "inanimate") {
      a = Animacy::Inanimate;
    } else {
      throw LexiconError(LexiconErrorKind::BadClassLabel, line_no,
                         "bad class label '" + std::string(cls) + "'");
    }

    const auto [it, inserted] = lex.entries_.emplace(std::move(lemma), a);
    if (!inserted && it->second != a) {
      throw LexiconError(LexiconErrorKind::ConflictingDuplicate, line_no,
                         "conflicting duplicate for '" + it->first + "'");
    }
  }
  return lex;
}

}  // namespace genmi
