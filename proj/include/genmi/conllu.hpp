#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "genmi/morph.hpp"

namespace genmi {

struct Token {
  int id = 0;  // 1-based position within the sentence
  std::string surface;
  std::string lemma;
  std::string upos;
  MorphFeatures feats;
  int head = 0;  // 0 = root
  std::string deprel;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string source_id;  // sent_id comment, empty when absent

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

enum class ConlluErrorKind { MalformedLine, InvalidHead };

class ConlluError : public std::runtime_error {
 public:
  ConlluError(ConlluErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}
  ConlluErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ConlluErrorKind kind_;
  std::size_t line_;
};

struct ReaderOptions {
  // In lenient mode (default) a malformed sentence is dropped and counted;
  // strict mode aborts with the offending line number.
  bool strict = false;
};

// Pull parser over a CoNLL-U stream. Memory use is bounded by the largest
// single sentence. Multiword-token lines (id ranges) and empty-node lines
// (decimal ids) are skipped; comments are consumed with sent_id captured.
class ConlluReader {
 public:
  explicit ConlluReader(std::istream& in, ReaderOptions opts = {})
      : in_(&in), opts_(opts) {}

  // Next well-formed sentence, or nullopt at end of input.
  std::optional<Sentence> next();

  std::size_t skipped_sentences() const { return skipped_; }
  std::size_t line_number() const { return line_no_; }

 private:
  std::istream* in_;
  ReaderOptions opts_;
  std::size_t line_no_ = 0;
  std::size_t skipped_ = 0;
};

// Convenience wrapper for small inputs and tests.
std::vector<Sentence> parse_conllu_string(std::string_view text,
                                          ReaderOptions opts = {},
                                          std::size_t* skipped = nullptr);

// Serialize one sentence back to CoNLL-U (10 columns, trailing blank line).
// Columns this library does not model (XPOS, DEPS, MISC) are written as "_".
std::string to_conllu(const Sentence& sentence);

}  // namespace genmi
