#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assograph/graph.hpp"

namespace assograph {

enum class UnitKind { author, term };

std::string_view to_string(UnitKind kind) noexcept;
UnitKind parse_unit_kind(std::string_view s);

/// Normalized person name: folded uppercase surname plus ordered initials.
struct AuthorKey {
  std::string surname;
  std::vector<char> initials;

  /// "SURNAME, A. F." (or just "SURNAME" without initials). Normalizing the
  /// rendered form yields the same key.
  std::string render() const;

  friend auto operator<=>(const AuthorKey&, const AuthorKey&) = default;
};

/// Key-based author normalization.
///
/// The surname is the text before the first comma when one is present,
/// otherwise the last whitespace-separated token. Diacritics are folded and
/// letters uppercased; hyphens inside the surname survive, all other
/// punctuation is removed. Given names collapse to their initial letters,
/// splitting on whitespace, periods and hyphens ("Jean-Pierre" -> J, P).
AuthorKey normalize_author(std::string_view raw);

struct Document {
  std::string id;
  std::optional<std::string> title;
  std::vector<std::string> raw_authors;
  std::optional<std::vector<std::string>> keywords;
  std::optional<std::string> abstract_text;
  std::optional<int> year;
  std::vector<std::string> tags;

  // Registry ids, sorted and unique.
  std::vector<UnitId> author_units;
  std::vector<UnitId> term_units;

  friend bool operator==(const Document&, const Document&) = default;
};

struct UnitInfo {
  UnitKind kind = UnitKind::author;
  std::string form;

  friend bool operator==(const UnitInfo&, const UnitInfo&) = default;
};

/// Dense bidirectional map unit id <-> (kind, canonical form).
class UnitRegistry {
 public:
  UnitRegistry() = default;
  /// Ids are assigned in order of `units`; (kind, form) pairs must be unique.
  explicit UnitRegistry(std::vector<UnitInfo> units);

  std::size_t size() const noexcept { return units_.size(); }
  bool contains(UnitId id) const noexcept { return id < units_.size(); }
  const UnitInfo& at(UnitId id) const;
  std::optional<UnitId> find(UnitKind kind, std::string_view form) const;
  std::span<const UnitInfo> units() const noexcept { return units_; }

  friend bool operator==(const UnitRegistry& a, const UnitRegistry& b) {
    return a.units_ == b.units_;
  }

 private:
  std::vector<UnitInfo> units_;
  std::map<std::pair<UnitKind, std::string>, UnitId> index_;
};

enum class TermMode { keywords, naive_np };

std::string_view to_string(TermMode mode) noexcept;
TermMode parse_term_mode(std::string_view s);

enum class VariantKind { spelling, morphological, expansion, synonym };

std::string_view to_string(VariantKind kind) noexcept;
VariantKind parse_variant_kind(std::string_view s);

/// Undirected variation relation between two term units (u < v).
struct VariantLink {
  UnitId u = 0;
  UnitId v = 0;
  VariantKind kind = VariantKind::spelling;

  friend auto operator<=>(const VariantLink&, const VariantLink&) = default;
};

struct Term {
  UnitId id = 0;
  std::vector<std::string> tokens;
  std::vector<std::string> surface_forms;  // sorted, unique

  /// Tokens joined by single spaces; the registry's canonical form.
  std::string form() const;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Term layer attached to a corpus once extraction has run.
struct TermIndex {
  TermMode mode = TermMode::keywords;
  std::vector<Term> terms;  // sorted by id
  std::vector<VariantLink> variants;

  friend bool operator==(const TermIndex&, const TermIndex&) = default;
};

/// Parsed document collection. Author units take ids 0..A-1 in lexicographic
/// order of their rendered keys; extracted terms follow as A..A+T-1 in
/// lexicographic order of their canonical forms.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Document> documents, UnitRegistry registry,
         std::optional<TermIndex> terms = std::nullopt);

  std::span<const Document> documents() const noexcept { return documents_; }
  const UnitRegistry& registry() const noexcept { return registry_; }
  const std::optional<TermIndex>& terms() const noexcept { return terms_; }

  const Document* find_document(std::string_view id) const;
  std::size_t author_count() const noexcept;
  std::size_t term_count() const noexcept;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Document> documents_;
  UnitRegistry registry_;
  std::optional<TermIndex> terms_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

/// Parse line-delimited JSON records (one document per line, blank lines
/// ignored). Fields: id (required), authors (required array), title,
/// keywords, abstract, year, tags.
Corpus parse_corpus(std::istream& in);
Corpus parse_corpus_text(std::string_view text);

struct StatsReport {
  std::size_t documents = 0;
  std::size_t authors = 0;
  std::size_t terms = 0;
  std::size_t undated_documents = 0;
  std::map<int, std::size_t> year_histogram;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

StatsReport corpus_stats(const Corpus& c);

}  // namespace assograph
