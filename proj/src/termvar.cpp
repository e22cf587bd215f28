#include "assograph/termvar.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "assograph/error.hpp"
#include "assograph/text.hpp"

namespace assograph {
namespace {

constexpr std::size_t kMaxRunLength = 6;

struct CodePoint {
  std::uint32_t value;
  std::size_t length;
};

CodePoint decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> std::optional<std::uint32_t> {
    if (i + k >= s.size()) return std::nullopt;
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    return b & 0x3Fu;
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0) {
    if (auto c1 = cont(1)) return {((b0 & 0x1Fu) << 6) | *c1, 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    auto c1 = cont(1);
    auto c2 = cont(2);
    if (c1 && c2) return {((b0 & 0x0Fu) << 12) | (*c1 << 6) | *c2, 3};
  } else if ((b0 & 0xF8) == 0xF0) {
    auto c1 = cont(1);
    auto c2 = cont(2);
    auto c3 = cont(3);
    if (c1 && c2 && c3) return {((b0 & 0x07u) << 18) | (*c1 << 12) | (*c2 << 6) | *c3, 4};
  }
  return {0xFFFD, 1};
}

bool is_letter(std::uint32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp < 0xC0 || cp == 0xD7 || cp == 0xF7 || cp == 0xFFFD) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  return true;
}

bool is_digit(std::uint32_t cp) { return cp >= '0' && cp <= '9'; }

class RunCollector {
 public:
  explicit RunCollector(const StopwordSet& stopwords) : stopwords_(stopwords) {}

  void letter(std::string_view bytes) { word_.append(bytes); }
  void non_alpha(std::string_view bytes) {
    word_.append(bytes);
    tainted_ = true;
  }
  bool in_word() const { return !word_.empty(); }

  void end_word() {
    if (word_.empty()) return;
    std::string lowered = text::to_lower_ascii(word_);
    if (tainted_ || stopwords_.contains(lowered)) {
      end_run();
    } else {
      run_tokens_.push_back(std::move(lowered));
      run_surface_.push_back(word_);
    }
    word_.clear();
    tainted_ = false;
  }

  void end_run() {
    for (std::size_t start = 0; start < run_tokens_.size(); start += kMaxRunLength) {
      const std::size_t end = std::min(run_tokens_.size(), start + kMaxRunLength);
      TermForm t;
      std::string surface;
      for (std::size_t k = start; k < end; ++k) {
        t.tokens.push_back(run_tokens_[k]);
        if (!surface.empty()) surface += ' ';
        surface += run_surface_[k];
      }
      t.surface_forms.push_back(std::move(surface));
      out_.push_back(std::move(t));
    }
    run_tokens_.clear();
    run_surface_.clear();
  }

  std::vector<TermForm> take() { return std::move(out_); }

 private:
  const StopwordSet& stopwords_;
  std::string word_;
  bool tainted_ = false;
  std::vector<std::string> run_tokens_;
  std::vector<std::string> run_surface_;
  std::vector<TermForm> out_;
};

std::vector<TermForm> naive_np_runs(std::string_view abstract, const StopwordSet& stopwords) {
  RunCollector runs(stopwords);
  std::size_t i = 0;
  while (i < abstract.size()) {
    const CodePoint cp = decode(abstract, i);
    const std::string_view bytes = abstract.substr(i, cp.length);
    if (is_letter(cp.value)) {
      runs.letter(bytes);
    } else if (is_digit(cp.value)) {
      runs.non_alpha(bytes);
    } else if ((cp.value == '-' || cp.value == '\'') && runs.in_word() &&
               i + 1 < abstract.size() && is_letter(decode(abstract, i + 1).value)) {
      runs.letter(bytes);
    } else if (cp.value < 0x80 && text::is_space(static_cast<char>(cp.value))) {
      runs.end_word();
    } else {
      runs.end_word();
      runs.end_run();
    }
    i += cp.length;
  }
  runs.end_word();
  runs.end_run();
  return runs.take();
}

std::vector<TermForm> merge_forms(std::vector<TermForm> forms) {
  std::map<std::vector<std::string>, std::set<std::string>> merged;
  for (auto& f : forms) {
    auto& surfaces = merged[f.tokens];
    surfaces.insert(f.surface_forms.begin(), f.surface_forms.end());
  }
  std::vector<TermForm> out;
  out.reserve(merged.size());
  for (auto& [tokens, surfaces] : merged) {
    out.push_back({tokens, std::vector<std::string>(surfaces.begin(), surfaces.end())});
  }
  return out;
}

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet words = {
      "a",       "about",  "above", "after", "again",   "against", "all",   "also",  "among",
      "an",      "and",    "any",   "are",   "as",      "at",      "be",    "been",  "before",
      "being",   "below",  "between", "both", "but",    "by",      "can",   "could", "did",
      "do",      "does",   "doing", "down",  "during",  "each",    "either", "few",  "for",
      "from",    "further", "had",  "has",   "have",    "having",  "he",    "her",   "here",
      "hers",    "him",    "his",   "how",   "however", "i",       "if",    "in",    "into",
      "is",      "it",     "its",   "itself", "may",    "more",    "most",  "much",  "must",
      "my",      "new",    "no",    "nor",   "not",     "of",      "off",   "on",    "once",
      "only",    "or",     "other", "our",   "ours",    "out",     "over",  "own",   "paper",
      "same",    "she",    "should", "show", "shown",   "so",      "some",  "such",  "than",
      "that",    "the",    "their", "them",  "then",    "there",   "these", "they",  "this",
      "those",   "through", "thus", "to",    "too",     "under",   "until", "up",    "upon",
      "us",      "using",  "very",  "was",   "we",      "were",    "what",  "when",  "where",
      "whether", "which",  "while", "who",   "whom",    "why",     "will",  "with",  "within",
      "without", "would",  "yet",   "you",   "your",
  };
  return words;
}

std::vector<TermForm> extract_terms(const Document& doc, TermMode mode,
                                    const StopwordSet& stopwords) {
  if (mode == TermMode::keywords) {
    if (!doc.keywords) {
      throw Error(ErrorCode::precondition,
                  "document '" + doc.id + "': mode keywords requires a keywords field");
    }
    std::vector<TermForm> forms;
    for (const auto& kw : *doc.keywords) {
      auto tokens = text::split_whitespace(text::to_lower_ascii(kw));
      if (tokens.empty()) continue;
      forms.push_back({std::move(tokens), {std::string(text::trim(kw))}});
    }
    return merge_forms(std::move(forms));
  }
  if (!doc.abstract_text) {
    throw Error(ErrorCode::precondition,
                "document '" + doc.id + "': mode naive_np requires an abstract field");
  }
  return merge_forms(naive_np_runs(*doc.abstract_text, stopwords));
}

// ---------------------------------------------------------------------------
// Synonyms

void SynonymLexicon::add(std::string_view a, std::string_view b) {
  std::string x = text::to_lower_ascii(text::fold_diacritics(text::trim(a)));
  std::string y = text::to_lower_ascii(text::fold_diacritics(text::trim(b)));
  if (x.empty() || y.empty() || x == y) return;
  if (y < x) std::swap(x, y);
  if (!pairs_.emplace(x, y).second) return;
  auto insert_sorted = [](std::vector<std::string>& v, const std::string& s) {
    v.insert(std::upper_bound(v.begin(), v.end(), s), s);
  };
  insert_sorted(by_token_[x], y);
  insert_sorted(by_token_[y], x);
}

std::span<const std::string> SynonymLexicon::synonyms_of(std::string_view token) const {
  const auto it = by_token_.find(token);
  if (it == by_token_.end()) return {};
  return it->second;
}

SynonymLexicon SynonymLexicon::load(std::istream& in) {
  SynonymLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tab = trimmed.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::parse_error,
                  "synonym lexicon line " + std::to_string(line_no) + ": expected a tab-separated pair");
    }
    lex.add(trimmed.substr(0, tab), trimmed.substr(tab + 1));
  }
  return lex;
}

// ---------------------------------------------------------------------------
// Variants

std::vector<std::string> spelling_key(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    const std::string folded = text::to_lower_ascii(text::fold_diacritics(t));
    std::size_t start = 0;
    while (start <= folded.size()) {
      const auto dash = folded.find('-', start);
      const auto end = dash == std::string::npos ? folded.size() : dash;
      if (end > start) out.push_back(folded.substr(start, end - start));
      if (dash == std::string::npos) break;
      start = dash + 1;
    }
  }
  return out;
}

std::string strip_suffix(std::string_view token) {
  auto ends_with = [&](std::string_view suffix) {
    return token.size() > suffix.size() && token.substr(token.size() - suffix.size()) == suffix;
  };
  if (ends_with("ies")) return std::string(token.substr(0, token.size() - 3)) + "y";
  if (ends_with("sses") || ends_with("xes") || ends_with("zes") || ends_with("ches") ||
      ends_with("shes")) {
    return std::string(token.substr(0, token.size() - 2));
  }
  if (ends_with("s") && !ends_with("ss") && !ends_with("us") && !ends_with("is")) {
    return std::string(token.substr(0, token.size() - 1));
  }
  return std::string(token);
}

std::vector<VariantLink> find_variants(std::span<const Term> terms, const SynonymLexicon& synonyms) {
  using Key = std::vector<std::string>;
  std::vector<Key> spell(terms.size());
  std::map<Key, std::vector<UnitId>> by_spelling;
  std::map<Key, std::vector<UnitId>> by_morph;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    spell[i] = spelling_key(terms[i].tokens);
    by_spelling[spell[i]].push_back(terms[i].id);
    Key stemmed;
    stemmed.reserve(spell[i].size());
    for (const auto& t : spell[i]) stemmed.push_back(strip_suffix(t));
    by_morph[stemmed].push_back(terms[i].id);
  }

  std::map<VertexPair, VariantKind> links;
  auto link = [&](UnitId a, UnitId b, VariantKind kind) {
    if (a == b) return;
    links.try_emplace(VertexPair::of(a, b), kind);
  };
  auto link_group = [&](const std::map<Key, std::vector<UnitId>>& groups, VariantKind kind) {
    for (const auto& [key, ids] : groups) {
      for (std::size_t x = 0; x < ids.size(); ++x) {
        for (std::size_t y = x + 1; y < ids.size(); ++y) link(ids[x], ids[y], kind);
      }
    }
  };

  link_group(by_spelling, VariantKind::spelling);
  link_group(by_morph, VariantKind::morphological);

  if (!synonyms.empty()) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t p = 0; p < spell[i].size(); ++p) {
        for (const auto& syn : synonyms.synonyms_of(spell[i][p])) {
          Key candidate = spell[i];
          candidate[p] = syn;
          const auto it = by_spelling.find(candidate);
          if (it == by_spelling.end()) continue;
          for (UnitId other : it->second) link(terms[i].id, other, VariantKind::synonym);
        }
      }
    }
  }

  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t p = 1; p < spell[i].size(); ++p) {
      const Key suffix(spell[i].begin() + static_cast<std::ptrdiff_t>(p), spell[i].end());
      const auto it = by_spelling.find(suffix);
      if (it == by_spelling.end()) continue;
      for (UnitId other : it->second) link(terms[i].id, other, VariantKind::expansion);
    }
  }

  std::vector<VariantLink> out;
  out.reserve(links.size());
  for (const auto& [pair, kind] : links) out.push_back({pair.u, pair.v, kind});
  return out;
}

Corpus extract_corpus_terms(const Corpus& corpus, TermMode mode, const SynonymLexicon& synonyms,
                            const StopwordSet& stopwords, bool skip_missing) {
  std::vector<std::vector<TermForm>> per_doc;
  std::map<std::string, TermForm> by_form;
  for (const Document& d : corpus.documents()) {
    const bool missing = mode == TermMode::keywords ? !d.keywords : !d.abstract_text;
    if (missing && skip_missing) {
      per_doc.emplace_back();
      continue;
    }
    per_doc.push_back(extract_terms(d, mode, stopwords));
    for (const TermForm& f : per_doc.back()) {
      Term probe{0, f.tokens, {}};
      auto [it, inserted] = by_form.try_emplace(probe.form(), f);
      if (!inserted) {
        std::set<std::string> merged(it->second.surface_forms.begin(),
                                     it->second.surface_forms.end());
        merged.insert(f.surface_forms.begin(), f.surface_forms.end());
        it->second.surface_forms.assign(merged.begin(), merged.end());
      }
    }
  }

  std::vector<UnitInfo> units;
  for (const UnitInfo& u : corpus.registry().units()) {
    if (u.kind == UnitKind::author) units.push_back(u);
  }
  TermIndex index;
  index.mode = mode;
  std::map<std::string, UnitId, std::less<>> term_ids;
  for (auto& [form, f] : by_form) {
    const auto id = static_cast<UnitId>(units.size());
    units.push_back({UnitKind::term, form});
    term_ids.emplace(form, id);
    index.terms.push_back({id, f.tokens, f.surface_forms});
  }
  index.variants = find_variants(index.terms, synonyms);

  std::vector<Document> docs(corpus.documents().begin(), corpus.documents().end());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto& ids = docs[i].term_units;
    ids.clear();
    for (const TermForm& f : per_doc[i]) {
      Term probe{0, f.tokens, {}};
      ids.push_back(term_ids.at(probe.form()));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  return Corpus(std::move(docs), UnitRegistry(std::move(units)), std::move(index));
}

}  // namespace assograph
