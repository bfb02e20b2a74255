#include "epc/bow.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace epc {

index_t Corpus::total_positions() const {
  index_t total = 0;
  for (const auto& d : docs) total += d.size();
  return total;
}

std::vector<std::string> default_tokenizer(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    const unsigned char uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      current.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Corpus corpus_from_token_lists(const std::vector<std::vector<std::string>>& documents) {
  Corpus corpus;
  std::map<std::string, index_t> ids;
  for (const auto& doc : documents) {
    std::vector<index_t> seq;
    seq.reserve(doc.size());
    for (const auto& tok : doc) {
      auto [it, inserted] = ids.try_emplace(tok, corpus.tokens.size());
      if (inserted) corpus.tokens.push_back(tok);
      seq.push_back(it->second);
    }
    corpus.docs.push_back(std::move(seq));
  }
  return corpus;
}

Corpus corpus_from_texts(const std::vector<std::string>& documents, const Tokenizer& tokenizer) {
  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(documents.size());
  for (const auto& text : documents) token_lists.push_back(tokenizer(text));
  return corpus_from_token_lists(token_lists);
}

std::int64_t VocabMap::word_of(const std::string& surface) const {
  const auto it = std::lower_bound(words.begin(), words.end(), surface);
  if (it == words.end() || *it != surface) return -1;
  return static_cast<std::int64_t>(it - words.begin());
}

VocabMap build_vocab(const Corpus& corpus, double stop_fraction, index_t rare_count,
                     const std::map<std::string, std::string>& merge_rules) {
  // Merge surface forms first, then count occurrences of the merged forms.
  std::vector<std::string> merged(corpus.tokens.size());
  for (index_t t = 0; t < corpus.tokens.size(); ++t) {
    const auto rule = merge_rules.find(corpus.tokens[t]);
    merged[t] = rule != merge_rules.end() ? rule->second : corpus.tokens[t];
  }

  std::map<std::string, index_t> counts;
  for (const auto& doc : corpus.docs) {
    for (index_t tok : doc) ++counts[merged[tok]];
  }
  const double total = static_cast<double>(corpus.total_positions());

  std::vector<std::string> kept;
  for (const auto& [surface, count] : counts) {
    const bool stop = total > 0.0 && static_cast<double>(count) / total > stop_fraction;
    const bool rare = count < rare_count;
    if (!stop && !rare) kept.push_back(surface);
  }
  if (kept.empty()) throw ConfigError("vocabulary is empty after stop/rare filtering");
  // kept is sorted already (map iteration order); word ids are its indices.

  VocabMap vocab;
  vocab.words = kept;
  vocab.token_to_word.assign(corpus.tokens.size(), -1);
  for (index_t t = 0; t < corpus.tokens.size(); ++t) {
    const auto it = std::lower_bound(kept.begin(), kept.end(), merged[t]);
    if (it != kept.end() && *it == merged[t]) {
      vocab.token_to_word[t] = static_cast<std::int64_t>(it - kept.begin());
    }
  }
  return vocab;
}

FibreIndex build_fibre_index(const Corpus& corpus, const VocabMap& vocab) {
  FibreIndex index;
  index.word_count = vocab.word_count();
  index.words = vocab.words;
  index.positions.assign(index.word_count, std::vector<std::vector<index_t>>(corpus.docs.size()));
  index.word_at.resize(corpus.docs.size());
  for (index_t i = 0; i < corpus.docs.size(); ++i) {
    const auto& doc = corpus.docs[i];
    index.word_at[i].assign(doc.size(), -1);
    for (index_t pos0 = 0; pos0 < doc.size(); ++pos0) {
      const std::int64_t w = vocab.token_to_word[doc[pos0]];
      index.word_at[i][pos0] = w;
      if (w >= 0) index.positions[static_cast<index_t>(w)][i].push_back(pos0 + 1);
    }
  }
  return index;
}

std::vector<index_t> neighborhood_r(const FibreIndex& index, index_t v, index_t r) {
  if (v >= index.word_count) throw std::invalid_argument("unknown word id");
  std::set<index_t> words;
  for (index_t i = 0; i < index.doc_count(); ++i) {
    const index_t len = index.doc_length(i);
    for (index_t x : index.positions[v][i]) {
      const index_t lo = x > r ? x - r : 1;
      const index_t hi = std::min<index_t>(x + r, len);
      for (index_t pos = lo; pos <= hi; ++pos) {
        const std::int64_t w = index.word_at[i][pos - 1];
        if (w >= 0) words.insert(static_cast<index_t>(w));
      }
    }
  }
  words.insert(v);  // v has at least one instance; windows always include it
  return {words.begin(), words.end()};
}

double weight_r(const FibreIndex& index, index_t v, index_t w, index_t r) {
  if (v >= index.word_count || w >= index.word_count) {
    throw std::invalid_argument("unknown word id");
  }
  double sum = 0.0;
  for (index_t i = 0; i < index.doc_count(); ++i) {
    const auto& xs = index.positions[v][i];
    const auto& ys = index.positions[w][i];
    if (xs.empty() || ys.empty()) continue;
    for (index_t x : xs) {
      const index_t lo = x > r ? x - r : 0;
      auto it = std::lower_bound(ys.begin(), ys.end(), lo);
      for (; it != ys.end() && *it <= x + r; ++it) {
        sum += static_cast<double>(*it > x ? *it - x : x - *it);
      }
    }
  }
  return sum;
}

WeightedRaySystem word_ray_system(const FibreIndex& index, index_t r,
                                  WordWeightTransform transform) {
  // r = 0 leaves every neighborhood a singleton and the system empty.
  WeightedRaySystem sys(index.word_count);
  for (index_t v = 0; v < index.word_count; ++v) {
    for (index_t w : neighborhood_r(index, v, r)) {
      if (w == v) continue;
      const double raw = weight_r(index, v, w, r);
      if (!(raw > 0.0)) continue;
      double weight = raw;
      switch (transform) {
        case WordWeightTransform::Raw:
          break;
        case WordWeightTransform::ExpNeg:
          weight = std::exp(-raw);
          break;
        case WordWeightTransform::Reciprocal:
          weight = 1.0 / raw;
          break;
      }
      sys.add(v, w, weight);
    }
  }
  return sys;
}

}  // namespace epc
