#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "epc/patch.hpp"

namespace epc {

// Documents as sequences of token ids; positions are 1-based with the
// within-document metric |y - x|.
struct Corpus {
  std::vector<std::string> tokens;            // token id -> surface form
  std::vector<std::vector<index_t>> docs;     // per document: token id per position

  index_t total_positions() const;
};

using Tokenizer = std::function<std::vector<std::string>(const std::string&)>;

// Lower-cases and splits on anything outside [a-z0-9].
std::vector<std::string> default_tokenizer(const std::string& text);

Corpus corpus_from_texts(const std::vector<std::string>& documents,
                         const Tokenizer& tokenizer = default_tokenizer);

Corpus corpus_from_token_lists(const std::vector<std::vector<std::string>>& documents);

// Token -> word quotient with stop/rare tokens removed before the vocabulary
// is formed. Word ids are assigned in lexicographic order of the surface
// forms.
struct VocabMap {
  std::vector<std::int64_t> token_to_word;  // -1 for dropped tokens
  std::vector<std::string> words;           // word id -> surface form

  index_t word_count() const { return words.size(); }
  std::int64_t word_of(const std::string& surface) const;
};

// merge_rules maps surface forms onto surface forms (applied once, before
// counting). Tokens occurring in more than stop_fraction of all positions or
// fewer than rare_count times are dropped. Throws ConfigError when nothing
// survives.
VocabMap build_vocab(const Corpus& corpus, double stop_fraction = 1.0, index_t rare_count = 0,
                     const std::map<std::string, std::string>& merge_rules = {});

// Word instances: for each word and document, the sorted 1-based positions
// carrying it, plus the word at every position (-1 where dropped).
struct FibreIndex {
  index_t word_count = 0;
  std::vector<std::vector<std::vector<index_t>>> positions;  // [word][doc] -> sorted positions
  std::vector<std::vector<std::int64_t>> word_at;            // [doc][pos0] -> word or -1
  std::vector<std::string> words;

  index_t doc_count() const { return word_at.size(); }
  index_t doc_length(index_t i) const { return word_at[i].size(); }
};

FibreIndex build_fibre_index(const Corpus& corpus, const VocabMap& vocab);

// Words within r positions of an instance of v in any document; contains v.
// Throws std::invalid_argument for an unknown word.
std::vector<index_t> neighborhood_r(const FibreIndex& index, index_t v, index_t r);

// Sum over documents of the distances |y - x| over ordered instance pairs
// (x of v, y of w) within distance r.
double weight_r(const FibreIndex& index, index_t v, index_t w, index_t r);

enum class WordWeightTransform {
  Raw,         // the co-occurrence sum itself (more co-occurrence = farther)
  ExpNeg,      // e^{-sum}
  Reciprocal,  // 1 / sum
};

// Rays (v, w, transform(weight_r)) for w in the r-neighborhood of v; feeds
// the patching construction on the vocabulary.
WeightedRaySystem word_ray_system(const FibreIndex& index, index_t r,
                                  WordWeightTransform transform = WordWeightTransform::Raw);

}  // namespace epc
