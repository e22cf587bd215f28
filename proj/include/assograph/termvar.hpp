#pragma once

#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assograph/corpus.hpp"

namespace assograph {

/// Tokens and surface strings of a term before it is registered as a unit.
struct TermForm {
  std::vector<std::string> tokens;
  std::vector<std::string> surface_forms;  // sorted, unique

  friend bool operator==(const TermForm&, const TermForm&) = default;
};

using StopwordSet = std::set<std::string, std::less<>>;

/// Small English function-word list used when no stopword set is supplied.
const StopwordSet& default_stopwords();

/// Terms of one document, unique by token list and sorted by it.
///
/// keywords: one term per keyword string, split on whitespace and lowercased.
/// naive_np: maximal runs of non-stopword alphabetic tokens from the abstract.
/// Runs break at stopwords, at tokens containing non-letters and at any
/// punctuation other than an in-word hyphen or apostrophe; runs longer than
/// six tokens are cut into consecutive chunks of at most six.
std::vector<TermForm> extract_terms(const Document& doc, TermMode mode,
                                    const StopwordSet& stopwords = default_stopwords());

/// Token-level synonym pairs. Entries are lowercased and diacritic-folded.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  void add(std::string_view a, std::string_view b);
  bool empty() const noexcept { return pairs_.empty(); }
  std::size_t size() const noexcept { return pairs_.size(); }
  std::span<const std::string> synonyms_of(std::string_view token) const;

  /// One tab-separated pair per line; blank lines and lines starting with '#'
  /// are skipped.
  static SynonymLexicon load(std::istream& in);

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, std::vector<std::string>, std::less<>> by_token_;
};

/// Tokens after hyphen splitting, diacritic folding and ASCII lowercasing.
std::vector<std::string> spelling_key(std::span<const std::string> tokens);

/// Minimal plural stemmer: -ies -> -y, -es after s/x/z/ch/sh dropped,
/// otherwise a final -s dropped (but not -ss, -us, -is).
std::string strip_suffix(std::string_view token);

/// Direct variant links between the given terms, one link per pair with
/// priority spelling > morphological > synonym > expansion. Output sorted.
std::vector<VariantLink> find_variants(std::span<const Term> terms, const SynonymLexicon& synonyms);

/// Run extraction over every document, register the terms after the author
/// units and compute variants corpus-wide. Existing term data is replaced.
/// With `skip_missing`, documents lacking the mode's source field contribute
/// no terms instead of raising.
Corpus extract_corpus_terms(const Corpus& corpus, TermMode mode,
                            const SynonymLexicon& synonyms = {},
                            const StopwordSet& stopwords = default_stopwords(),
                            bool skip_missing = false);

}  // namespace assograph
