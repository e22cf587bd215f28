#include "assograph/corpus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

#include "assograph/error.hpp"
#include "assograph/text.hpp"

namespace assograph {

using nlohmann::json;

std::string_view to_string(UnitKind kind) noexcept {
  return kind == UnitKind::author ? "author" : "term";
}

UnitKind parse_unit_kind(std::string_view s) {
  if (s == "author") return UnitKind::author;
  if (s == "term") return UnitKind::term;
  throw Error(ErrorCode::invalid_argument, "unknown unit kind '" + std::string(s) + "'");
}

std::string_view to_string(TermMode mode) noexcept {
  return mode == TermMode::keywords ? "keywords" : "naive_np";
}

TermMode parse_term_mode(std::string_view s) {
  if (s == "keywords") return TermMode::keywords;
  if (s == "naive_np") return TermMode::naive_np;
  throw Error(ErrorCode::invalid_argument, "unknown term mode '" + std::string(s) + "'");
}

std::string_view to_string(VariantKind kind) noexcept {
  switch (kind) {
    case VariantKind::spelling: return "spelling";
    case VariantKind::morphological: return "morphological";
    case VariantKind::expansion: return "expansion";
    case VariantKind::synonym: return "synonym";
  }
  return "spelling";
}

VariantKind parse_variant_kind(std::string_view s) {
  if (s == "spelling") return VariantKind::spelling;
  if (s == "morphological") return VariantKind::morphological;
  if (s == "expansion") return VariantKind::expansion;
  if (s == "synonym") return VariantKind::synonym;
  throw Error(ErrorCode::invalid_argument, "unknown variant kind '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Author names

namespace {

std::string clean_surname(std::string_view raw) {
  const std::string folded = text::to_upper_ascii(text::fold_diacritics(raw));
  std::string out;
  bool pending_space = false;
  for (char c : folded) {
    if (text::is_letter_byte(c) || c == '-') {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    } else if (text::is_space(c)) {
      pending_space = true;
    }
  }
  // Hyphens only survive between letters.
  while (!out.empty() && out.front() == '-') out.erase(out.begin());
  while (!out.empty() && out.back() == '-') out.pop_back();
  std::string squeezed;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '-' && (i + 1 >= out.size() || out[i + 1] == '-' || out[i + 1] == ' ' ||
                          out[i - 1] == ' ')) {
      continue;
    }
    squeezed.push_back(out[i]);
  }
  return squeezed;
}

std::vector<char> initials_of(std::string_view given) {
  const std::string folded = text::to_upper_ascii(text::fold_diacritics(given));
  std::vector<char> out;
  bool at_token_start = true;
  for (char c : folded) {
    if (text::is_space(c) || c == '.' || c == '-') {
      at_token_start = true;
      continue;
    }
    if (at_token_start && c >= 'A' && c <= 'Z') {
      out.push_back(c);
      at_token_start = false;
    } else if (at_token_start && text::is_letter_byte(c)) {
      // Unfoldable non-ASCII initial: no single-letter representation.
      at_token_start = false;
    }
  }
  return out;
}

}  // namespace

std::string AuthorKey::render() const {
  std::string out = surname;
  if (!initials.empty()) {
    out += ',';
    for (char c : initials) {
      out += ' ';
      out += c;
      out += '.';
    }
  }
  return out;
}

AuthorKey normalize_author(std::string_view raw) {
  const std::string_view trimmed = text::trim(raw);
  if (trimmed.empty()) {
    throw Error(ErrorCode::invalid_argument, "author name is empty");
  }
  AuthorKey key;
  if (const auto comma = trimmed.find(','); comma != std::string_view::npos) {
    key.surname = clean_surname(trimmed.substr(0, comma));
    key.initials = initials_of(trimmed.substr(comma + 1));
  } else {
    const auto tokens = text::split_whitespace(trimmed);
    key.surname = clean_surname(tokens.back());
    std::string given;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      given += tokens[i];
      given += ' ';
    }
    key.initials = initials_of(given);
  }
  if (key.surname.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "author name '" + std::string(trimmed) + "' has no surname letters");
  }
  return key;
}

// ---------------------------------------------------------------------------
// Registry / corpus

UnitRegistry::UnitRegistry(std::vector<UnitInfo> units) : units_(std::move(units)) {
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const auto [it, inserted] =
        index_.emplace(std::pair{units_[i].kind, units_[i].form}, static_cast<UnitId>(i));
    if (!inserted) {
      throw Error(ErrorCode::duplicate_id, "duplicate unit '" + units_[i].form + "'");
    }
  }
}

const UnitInfo& UnitRegistry::at(UnitId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::not_found, "unknown unit " + std::to_string(id));
  }
  return units_[id];
}

std::optional<UnitId> UnitRegistry::find(UnitKind kind, std::string_view form) const {
  const auto it = index_.find(std::pair{kind, std::string(form)});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Term::form() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

Corpus::Corpus(std::vector<Document> documents, UnitRegistry registry,
               std::optional<TermIndex> terms)
    : documents_(std::move(documents)), registry_(std::move(registry)), terms_(std::move(terms)) {
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const Document& d = documents_[i];
    if (d.id.empty()) {
      throw Error(ErrorCode::invalid_argument, "document " + std::to_string(i) + " has empty id");
    }
    if (!by_id_.emplace(d.id, i).second) {
      throw Error(ErrorCode::duplicate_id, "duplicate document id '" + d.id + "'");
    }
    for (UnitId u : d.author_units) {
      if (!registry_.contains(u) || registry_.at(u).kind != UnitKind::author) {
        throw Error(ErrorCode::invalid_argument,
                    "document '" + d.id + "' references non-author unit " + std::to_string(u));
      }
    }
    for (UnitId u : d.term_units) {
      if (!registry_.contains(u) || registry_.at(u).kind != UnitKind::term) {
        throw Error(ErrorCode::invalid_argument,
                    "document '" + d.id + "' references non-term unit " + std::to_string(u));
      }
    }
  }
  if (terms_) {
    for (const Term& t : terms_->terms) {
      if (!registry_.contains(t.id) || registry_.at(t.id).kind != UnitKind::term ||
          registry_.at(t.id).form != t.form()) {
        throw Error(ErrorCode::invalid_argument, "term '" + t.form() + "' not registered");
      }
    }
  }
}

const Document* Corpus::find_document(std::string_view id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &documents_[it->second];
}

std::size_t Corpus::author_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(registry_.units().begin(), registry_.units().end(),
                    [](const UnitInfo& u) { return u.kind == UnitKind::author; }));
}

std::size_t Corpus::term_count() const noexcept {
  return registry_.size() - author_count();
}

namespace {

[[noreturn]] void field_error(std::size_t line, std::string_view field, std::string_view what) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": field '" +
                                          std::string(field) + "': " + std::string(what));
}

std::vector<std::string> string_array(const json& rec, std::string_view field, std::size_t line) {
  const json& arr = rec.at(std::string(field));
  if (!arr.is_array()) field_error(line, field, "expected an array of strings");
  std::vector<std::string> out;
  for (const json& item : arr) {
    if (!item.is_string()) field_error(line, field, "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::optional<std::string> optional_string(const json& rec, std::string_view field,
                                           std::size_t line) {
  const auto it = rec.find(std::string(field));
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) field_error(line, field, "expected a string");
  return it->get<std::string>();
}

}  // namespace

Corpus parse_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::vector<std::vector<AuthorKey>> keys_per_doc;
  std::set<std::string, std::less<>> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(line_no) + ": malformed record: " + e.what());
    }
    if (!rec.is_object()) {
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(line_no) + ": record is not an object");
    }
    Document d;
    const auto id = optional_string(rec, "id", line_no);
    if (!id) field_error(line_no, "id", "required");
    if (text::trim(*id).empty()) field_error(line_no, "id", "must be non-empty");
    d.id = *id;
    if (!rec.contains("authors")) field_error(line_no, "authors", "required");
    d.raw_authors = string_array(rec, "authors", line_no);
    d.title = optional_string(rec, "title", line_no);
    d.abstract_text = optional_string(rec, "abstract", line_no);
    if (rec.contains("keywords") && !rec["keywords"].is_null()) {
      d.keywords = string_array(rec, "keywords", line_no);
    }
    if (rec.contains("tags") && !rec["tags"].is_null()) {
      d.tags = string_array(rec, "tags", line_no);
    }
    if (rec.contains("year") && !rec["year"].is_null()) {
      if (!rec["year"].is_number_integer()) field_error(line_no, "year", "expected an integer");
      d.year = rec["year"].get<int>();
    }
    std::vector<AuthorKey> keys;
    for (const auto& raw : d.raw_authors) {
      try {
        keys.push_back(normalize_author(raw));
      } catch (const Error& e) {
        field_error(line_no, "authors", e.what());
      }
    }
    if (!seen_ids.insert(d.id).second) {
      throw Error(ErrorCode::duplicate_id, "line " + std::to_string(line_no) +
                                               ": duplicate document id '" + d.id + "'");
    }
    docs.push_back(std::move(d));
    keys_per_doc.push_back(std::move(keys));
  }

  std::set<std::string> forms;
  for (const auto& keys : keys_per_doc) {
    for (const auto& k : keys) forms.insert(k.render());
  }
  std::vector<UnitInfo> units;
  units.reserve(forms.size());
  for (const auto& f : forms) units.push_back({UnitKind::author, f});
  UnitRegistry registry(std::move(units));

  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto& ids = docs[i].author_units;
    for (const auto& k : keys_per_doc[i]) ids.push_back(*registry.find(UnitKind::author, k.render()));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  return Corpus(std::move(docs), std::move(registry));
}

Corpus parse_corpus_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in);
}

StatsReport corpus_stats(const Corpus& c) {
  StatsReport r;
  r.documents = c.documents().size();
  r.authors = c.author_count();
  r.terms = c.term_count();
  for (const auto& d : c.documents()) {
    if (d.year) {
      ++r.year_histogram[*d.year];
    } else {
      ++r.undated_documents;
    }
  }
  return r;
}

}  // namespace assograph
