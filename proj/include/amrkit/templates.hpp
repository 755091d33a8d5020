#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrkit/document.hpp"
#include "amrkit/graph.hpp"

namespace amrkit {

enum class PlaceholderType { kNum, kWord, kUnit };

struct Placeholder {
  std::string name;
  PlaceholderType type;
};

using Captures = std::map<std::string, std::string>;

// Surface unit -> unit concept, e.g. "cm" -> "centimeter".
class UnitTable {
 public:
  using Map = std::map<std::string, std::string, std::less<>>;

  UnitTable() = default;
  explicit UnitTable(Map units) : units_(std::move(units)) {}

  // Common vital-signs units.
  static UnitTable defaults();

  bool contains(std::string_view surface) const;
  // The concept for a surface form; unknown forms are returned unchanged.
  std::string concept_for(std::string_view surface) const;
  bool empty() const { return units_.empty(); }
  const Map& entries() const { return units_; }

 private:
  Map units_;
};

// A formulaic sentence pattern with typed slots and the PENMAN skeleton it
// produces. Placeholders are written {num}, {word}, {unit}, or {type:name}
// when a pattern needs two slots of the same type.
class Template {
 public:
  // Throws InvalidArgumentError for malformed patterns or skeleton slots that
  // the pattern does not define.
  Template(std::string name, std::string pattern, std::string skeleton);

  const std::string& name() const { return name_; }
  const std::string& pattern() const { return pattern_; }
  const std::string& skeleton() const { return skeleton_; }
  const std::vector<Placeholder>& placeholders() const { return placeholders_; }

  // Full-sentence match; unit slots must hold a unit from `units`.
  std::optional<Captures> match(std::string_view sentence, const UnitTable& units) const;

 private:
  std::string name_;
  std::string pattern_;
  std::string skeleton_;
  std::vector<Placeholder> placeholders_;
  std::regex regex_;
};

class TemplateRegistry {
 public:
  TemplateRegistry() = default;
  // Each template is probe-filled with canonical values and rejected with
  // InvalidArgumentError if the result is not a valid AMR.
  TemplateRegistry(std::vector<Template> templates, UnitTable units);

  // Records separated by blank lines: a name line, a pattern line, then the
  // skeleton. A record whose name line is "@units" instead lists one
  // "surface concept" pair per line. Lines starting with '#' are comments.
  static TemplateRegistry parse(std::string_view text);
  static TemplateRegistry load(const std::filesystem::path& path);

  const std::vector<Template>& templates() const { return templates_; }
  const UnitTable& units() const { return units_; }

 private:
  std::vector<Template> templates_;
  UnitTable units_;
};

struct TemplateMatch {
  const Template* templ;
  Captures captures;
};

// First template in registry order matching the whole sentence.
std::optional<TemplateMatch> match_template(std::string_view sentence,
                                            const TemplateRegistry& registry);

// Substitutes captures into the skeleton, parses, and validates.
AmrGraph fill(const Template& templ, const Captures& captures);

// Unit captures replaced by their unit concepts.
Captures normalize_units(const Template& templ, const Captures& captures,
                         const UnitTable& units);

// Lowercased, whitespace collapsed and trimmed.
std::string normalize_phrase(std::string_view phrase);

struct DictionaryEntry {
  std::string phrase;  // normalized
  std::string ne_type;
  AmrGraph fragment;
};

class NeDictionary {
 public:
  NeDictionary() = default;

  // Corpus-format file: each record has "# ::phrase <text>" and
  // "# ::type <ne-type>" metadata followed by the fragment. Types must be in
  // `ne_types`; fragments must validate; normalized phrases must be unique.
  static NeDictionary parse(std::string_view text, const std::vector<std::string>& ne_types);
  static NeDictionary load(const std::filesystem::path& path,
                           const std::vector<std::string>& ne_types);

  void add(std::string phrase, std::string ne_type, AmrGraph fragment);
  const DictionaryEntry* find(std::string_view phrase) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, DictionaryEntry, std::less<>> entries_;
};

// Hands out variable ids that do not collide with any id seen so far:
// first letter of the concept, then that letter with 2, 3, ... appended.
class VariableNamer {
 public:
  VariableNamer() = default;
  explicit VariableNamer(const AmrGraph& host);

  std::string fresh(std::string_view concept_label);
  void reserve(std::string id) { taken_.insert(std::move(id)); }

 private:
  std::set<std::string> taken_;
};

// A renamed copy of the fragment stored for `phrase`, or nullopt.
std::optional<AmrGraph> lookup(std::string_view phrase, const NeDictionary& dictionary,
                               VariableNamer& namer);
std::optional<AmrGraph> lookup(std::string_view phrase, const NeDictionary& dictionary);

// Adds `fragment` under `parent` via a new edge. Variable ids must not
// overlap. The result is validated.
AmrGraph attach(const AmrGraph& host, std::string_view parent, std::string_view role,
                const AmrGraph& fragment);

struct UnmatchedSentence {
  std::size_t line;  // 1-based
  std::string sentence;
};

struct TemplatizeResult {
  Corpus corpus;
  std::vector<UnmatchedSentence> unmatched;
};

// One sentence per line. Each non-blank line is tried against the registry,
// then as a whole phrase against the dictionary. Generated documents get ids
// "<id_prefix>-<line>".
TemplatizeResult templatize(std::string_view sentences, const TemplateRegistry& registry,
                            const NeDictionary& dictionary, std::string_view id_prefix);

}  // namespace amrkit
