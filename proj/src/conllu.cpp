#include "genmi/conllu.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

namespace genmi {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool parse_int(std::string_view s, int& out) {
  const char* beg = s.data();
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(beg, end, out);
  return ec == std::errc() && ptr == end;
}

// Multiword-token range "4-5" or similar.
bool is_id_range(std::string_view s) {
  const std::size_t dash = s.find('-');
  if (dash == std::string_view::npos) return false;
  return all_digits(s.substr(0, dash)) && all_digits(s.substr(dash + 1));
}

// Empty-node id "5.1".
bool is_decimal_id(std::string_view s) {
  const std::size_t dot = s.find('.');
  if (dot == std::string_view::npos) return false;
  return all_digits(s.substr(0, dot)) && all_digits(s.substr(dot + 1));
}

// Splits a token line into exactly 10 tab-separated columns.
bool split_columns(std::string_view line, std::array<std::string_view, 10>& cols) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t tab = line.find('\t', pos);
    if (i == 9) {
      if (tab != std::string_view::npos) return false;  // too many columns
      cols[i] = line.substr(pos);
      return true;
    }
    if (tab == std::string_view::npos) return false;  // too few columns
    cols[i] = line.substr(pos, tab - pos);
    pos = tab + 1;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Sentence> ConlluReader::next() {
  Sentence sent;
  std::vector<std::size_t> token_lines;  // source line of each token, for errors
  bool dropping = false;                 // lenient mode: sentence marked bad

  const auto fail = [&](ConlluErrorKind kind, std::size_t line,
                        const std::string& what) {
    if (opts_.strict) throw ConlluError(kind, line, what);
    dropping = true;
  };

  // Validates head ranges once the sentence length is known. Returns the
  // sentence if it survives, otherwise counts the drop.
  const auto flush = [&]() -> std::optional<Sentence> {
    if (dropping) {
      ++skipped_;
      return std::nullopt;
    }
    if (sent.tokens.empty()) return std::nullopt;
    const int n = static_cast<int>(sent.tokens.size());
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      const Token& t = sent.tokens[i];
      if (t.head < 0 || t.head > n) {
        if (opts_.strict)
          throw ConlluError(ConlluErrorKind::InvalidHead, token_lines[i],
                            "head " + std::to_string(t.head) +
                                " out of range for sentence of length " +
                                std::to_string(n));
        ++skipped_;
        return std::nullopt;
      }
    }
    return std::move(sent);
  };

  std::string line;
  while (std::getline(*in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (line.empty()) {
      if (sent.tokens.empty() && !dropping) continue;  // stray blank line
      if (auto s = flush()) return s;
      // dropped or empty: reset and keep scanning
      sent = Sentence{};
      token_lines.clear();
      dropping = false;
      continue;
    }

    if (line[0] == '#') {
      // Capture "# sent_id = ..." comments; everything else is consumed.
      std::string_view body = trim(std::string_view(line).substr(1));
      if (body.starts_with("sent_id")) {
        body.remove_prefix(7);
        body = trim(body);
        if (!body.empty() && body.front() == '=') {
          body.remove_prefix(1);
          sent.source_id = std::string(trim(body));
        }
      }
      continue;
    }

    if (dropping) continue;  // swallow the rest of a bad sentence

    std::array<std::string_view, 10> cols;
    if (!split_columns(line, cols)) {
      fail(ConlluErrorKind::MalformedLine, line_no_,
           "expected 10 tab-separated columns");
      continue;
    }

    const std::string_view id_col = cols[0];
    if (is_id_range(id_col) || is_decimal_id(id_col)) continue;  // skip MWT / empty node
    if (!all_digits(id_col)) {
      fail(ConlluErrorKind::MalformedLine, line_no_, "unparseable token id");
      continue;
    }

    Token tok;
    if (!parse_int(id_col, tok.id) || tok.id < 1) {
      fail(ConlluErrorKind::MalformedLine, line_no_, "token id must be >= 1");
      continue;
    }
    if (tok.id != static_cast<int>(sent.tokens.size()) + 1) {
      fail(ConlluErrorKind::MalformedLine, line_no_,
           "token ids must be consecutive from 1");
      continue;
    }
    if (!parse_int(cols[6], tok.head) || tok.head < 0) {
      fail(ConlluErrorKind::MalformedLine, line_no_, "unparseable head");
      continue;
    }
    if (tok.head == tok.id) {
      fail(ConlluErrorKind::InvalidHead, line_no_, "token is its own head");
      continue;
    }

    tok.surface = std::string(cols[1]);
    tok.lemma = std::string(cols[2]);
    tok.upos = std::string(cols[3]);
    try {
      tok.feats = parse_feats(cols[5], opts_.strict);
    } catch (const FeatsError& e) {
      fail(ConlluErrorKind::MalformedLine, line_no_, e.what());
      continue;
    }
    tok.deprel = std::string(cols[7]);

    sent.tokens.push_back(std::move(tok));
    token_lines.push_back(line_no_);
  }

  // end of input: flush a trailing sentence without a final blank line
  if (auto s = flush()) return s;
  return std::nullopt;
}

std::vector<Sentence> parse_conllu_string(std::string_view text,
                                          ReaderOptions opts,
                                          std::size_t* skipped) {
  std::istringstream in{std::string(text)};
  ConlluReader reader(in, opts);
  std::vector<Sentence> out;
  while (auto s = reader.next()) out.push_back(std::move(*s));
  if (skipped) *skipped = reader.skipped_sentences();
  return out;
}

std::string to_conllu(const Sentence& sentence) {
  std::string out;
  if (!sentence.source_id.empty()) {
    out += "# sent_id = ";
    out += sentence.source_id;
    out += '\n';
  }
  for (const Token& t : sentence.tokens) {
    out += std::to_string(t.id);
    out += '\t';
    out += t.surface.empty() ? "_" : t.surface;
    out += '\t';
    out += t.lemma.empty() ? "_" : t.lemma;
    out += '\t';
    out += t.upos.empty() ? "_" : t.upos;
    out += "\t_\t";
    out += feats_to_string(t.feats);
    out += '\t';
    out += std::to_string(t.head);
    out += '\t';
    out += t.deprel.empty() ? "_" : t.deprel;
    out += "\t_\t_\n";
  }
  out += '\n';
  return out;
}

}  // namespace genmi
