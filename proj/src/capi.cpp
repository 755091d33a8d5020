#include "amrkit/amrkit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "amrkit/corpus.hpp"
#include "amrkit/document.hpp"
#include "amrkit/error.hpp"
#include "amrkit/finegrained.hpp"
#include "amrkit/penman.hpp"
#include "amrkit/smatch.hpp"
#include "amrkit/templates.hpp"
#include "amrkit/triples.hpp"

// The opaque C handles are the C++ objects themselves.
struct amrkit_registry {
  amrkit::TemplateRegistry registry;
};
struct amrkit_dictionary {
  amrkit::NeDictionary dictionary;
};

namespace {

thread_local std::string g_last_error;

amrkit::AmrGraph* unwrap(amrkit_graph* g) { return reinterpret_cast<amrkit::AmrGraph*>(g); }
const amrkit::AmrGraph& unwrap(const amrkit_graph* g) {
  return *reinterpret_cast<const amrkit::AmrGraph*>(g);
}
amrkit_graph* wrap(amrkit::AmrGraph graph) {
  return reinterpret_cast<amrkit_graph*>(new amrkit::AmrGraph(std::move(graph)));
}
const amrkit::Corpus& unwrap(const amrkit_corpus* c) {
  return *reinterpret_cast<const amrkit::Corpus*>(c);
}
amrkit_corpus* wrap(amrkit::Corpus corpus) {
  return reinterpret_cast<amrkit_corpus*>(new amrkit::Corpus(std::move(corpus)));
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

amrkit_score to_c(const amrkit::Score& s) {
  return {s.n_correct, s.n_predicted, s.n_reference, s.precision, s.recall, s.f1};
}

amrkit::ScoreConfig from_c(const amrkit_score_config* config) {
  amrkit::ScoreConfig out;
  if (config == nullptr) return out;
  out.restarts = config->restarts;
  out.seed = config->seed;
  out.exact_cap = config->exact_cap;
  switch (config->exact_mode) {
    case AMRKIT_EXACT_ALWAYS: out.exact = amrkit::ExactMode::kAlways; break;
    case AMRKIT_EXACT_NEVER: out.exact = amrkit::ExactMode::kNever; break;
    default: out.exact = amrkit::ExactMode::kAuto; break;
  }
  out.top_triple = config->top_triple != 0;
  out.threads = config->threads;
  return out;
}

amrkit::FineGrainedOptions fine_options(const amrkit_score_config* config,
                                        const char* extra_ne_types) {
  amrkit::FineGrainedOptions options;
  options.top_triple = config != nullptr && config->top_triple != 0;
  if (extra_ne_types != nullptr) {
    for (auto& t : amrkit::read_ne_type_list(extra_ne_types))
      options.ne_types.push_back(std::move(t));
  }
  return options;
}

std::vector<std::string> all_ne_types(const char* extra_ne_types) {
  return fine_options(nullptr, extra_ne_types).ne_types;
}

void require(bool condition, const char* what) {
  if (!condition) throw amrkit::InvalidArgumentError(what);
}

// Runs `body`, translating exceptions into status codes and the thread-local
// error message.
template <typename Body>
amrkit_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return AMRKIT_OK;
  } catch (const amrkit::ParseError& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_PARSE;
  } catch (const amrkit::InvalidGraphError& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_INVALID_GRAPH;
  } catch (const amrkit::InvalidArgumentError& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_INVALID_ARGUMENT;
  } catch (const amrkit::MismatchError& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_MISMATCH;
  } catch (const amrkit::CapExceededError& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_CAP_EXCEEDED;
  } catch (const amrkit::InsufficientDataError& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_INSUFFICIENT_DATA;
  } catch (const amrkit::IoError& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AMRKIT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return AMRKIT_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* amrkit_version(void) { return "1.0.0"; }

const char* amrkit_status_name(amrkit_status status) {
  switch (status) {
    case AMRKIT_OK: return "ok";
    case AMRKIT_ERR_PARSE: return "parse error";
    case AMRKIT_ERR_INVALID_GRAPH: return "invalid graph";
    case AMRKIT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AMRKIT_ERR_MISMATCH: return "mismatch";
    case AMRKIT_ERR_CAP_EXCEEDED: return "cap exceeded";
    case AMRKIT_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case AMRKIT_ERR_IO: return "i/o error";
    case AMRKIT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* amrkit_last_error(void) { return g_last_error.c_str(); }

void amrkit_string_free(char* s) { std::free(s); }

void amrkit_string_array_free(char** items, size_t count) {
  if (items == nullptr) return;
  for (size_t i = 0; i < count; ++i) std::free(items[i]);
  std::free(items);
}

amrkit_status amrkit_graph_parse(const char* text, amrkit_graph** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = wrap(amrkit::parse_penman(text));
  });
}

amrkit_graph* amrkit_graph_clone(const amrkit_graph* graph) {
  return graph == nullptr ? nullptr : wrap(unwrap(graph));
}

void amrkit_graph_free(amrkit_graph* graph) { delete unwrap(graph); }

int amrkit_graph_equal(const amrkit_graph* a, const amrkit_graph* b) {
  return unwrap(a) == unwrap(b) ? 1 : 0;
}

const char* amrkit_graph_root(const amrkit_graph* graph) { return unwrap(graph).root().c_str(); }
size_t amrkit_graph_node_count(const amrkit_graph* graph) { return unwrap(graph).nodes().size(); }
size_t amrkit_graph_edge_count(const amrkit_graph* graph) { return unwrap(graph).edges().size(); }
size_t amrkit_graph_attribute_count(const amrkit_graph* graph) {
  return unwrap(graph).attributes().size();
}

amrkit_status amrkit_graph_serialize(const amrkit_graph* graph, int indent, char** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    *out = copy_string(amrkit::serialize_penman(unwrap(graph), {indent}));
  });
}

amrkit_status amrkit_graph_validate(const amrkit_graph* graph, char** diagnostics,
                                    size_t* count) {
  return guarded([&] {
    require(graph != nullptr && diagnostics != nullptr && count != nullptr, "null argument");
    std::string text;
    const auto found = amrkit::validate(unwrap(graph));
    for (const auto& d : found)
      text += std::string(amrkit::to_string(d.kind)) + ": " + d.message + "\n";
    *count = found.size();
    *diagnostics = copy_string(text);
  });
}

amrkit_status amrkit_graph_triples(const amrkit_graph* graph, int top_triple, char** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    std::string text;
    for (const auto& t : amrkit::decompose(unwrap(graph), {top_triple != 0}).triples)
      text += amrkit::to_string(t) + "\n";
    *out = copy_string(text);
  });
}

amrkit_status amrkit_graph_linearize(const amrkit_graph* graph, char*** tokens, size_t* count) {
  return guarded([&] {
    require(graph != nullptr && tokens != nullptr && count != nullptr, "null argument");
    const auto seq = amrkit::linearize(unwrap(graph));
    char** items = static_cast<char**>(std::calloc(seq.tokens.size() + 1, sizeof(char*)));
    if (items == nullptr) throw std::bad_alloc();
    try {
      for (size_t i = 0; i < seq.tokens.size(); ++i) items[i] = copy_string(seq.tokens[i]);
    } catch (...) {
      amrkit_string_array_free(items, seq.tokens.size());
      throw;
    }
    *tokens = items;
    *count = seq.tokens.size();
  });
}

amrkit_status amrkit_graph_delinearize(const char* const* tokens, size_t count,
                                       amrkit_graph** out) {
  return guarded([&] {
    require(out != nullptr && (tokens != nullptr || count == 0), "null argument");
    amrkit::TokenSequence seq;
    for (size_t i = 0; i < count; ++i) seq.tokens.emplace_back(tokens[i]);
    *out = wrap(amrkit::delinearize(seq));
  });
}

void amrkit_score_config_init(amrkit_score_config* config) {
  if (config == nullptr) return;
  const amrkit::ScoreConfig defaults;
  config->restarts = static_cast<uint32_t>(defaults.restarts);
  config->seed = defaults.seed;
  config->exact_cap = static_cast<uint32_t>(defaults.exact_cap);
  config->exact_mode = AMRKIT_EXACT_AUTO;
  config->top_triple = 0;
  config->threads = static_cast<uint32_t>(defaults.threads);
}

amrkit_status amrkit_score_pair(const amrkit_graph* predicted, const amrkit_graph* reference,
                                const amrkit_score_config* config, const char* document_id,
                                amrkit_score* out) {
  return guarded([&] {
    require(predicted != nullptr && reference != nullptr && out != nullptr, "null argument");
    *out = to_c(amrkit::score_pair(unwrap(predicted), unwrap(reference), from_c(config),
                                   document_id == nullptr ? "" : document_id));
  });
}

amrkit_status amrkit_corpus_parse(const char* text, const char* name, const char* source_tag,
                                  amrkit_corpus** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    amrkit::ReadOptions options{name == nullptr ? "" : name,
                                source_tag == nullptr ? "" : source_tag};
    *out = wrap(amrkit::read_corpus(text, options));
  });
}

amrkit_status amrkit_corpus_read_file(const char* path, const char* source_tag,
                                      amrkit_corpus** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    amrkit::ReadOptions options{"", source_tag == nullptr ? "" : source_tag};
    *out = wrap(amrkit::read_corpus_file(path, options));
  });
}

void amrkit_corpus_free(amrkit_corpus* corpus) {
  delete reinterpret_cast<amrkit::Corpus*>(corpus);
}

size_t amrkit_corpus_size(const amrkit_corpus* corpus) { return unwrap(corpus).size(); }

const char* amrkit_corpus_name(const amrkit_corpus* corpus) {
  return unwrap(corpus).name.c_str();
}

const char* amrkit_corpus_document_id(const amrkit_corpus* corpus, size_t index) {
  const auto& docs = unwrap(corpus).documents;
  return index < docs.size() ? docs[index].id.c_str() : nullptr;
}

const char* amrkit_corpus_document_source_tag(const amrkit_corpus* corpus, size_t index) {
  const auto& docs = unwrap(corpus).documents;
  return index < docs.size() ? docs[index].source_tag.c_str() : nullptr;
}

const amrkit_graph* amrkit_corpus_document_graph(const amrkit_corpus* corpus, size_t index) {
  const auto& docs = unwrap(corpus).documents;
  return index < docs.size() ? reinterpret_cast<const amrkit_graph*>(&docs[index].graph)
                             : nullptr;
}

amrkit_status amrkit_corpus_serialize(const amrkit_corpus* corpus, char** out) {
  return guarded([&] {
    require(corpus != nullptr && out != nullptr, "null argument");
    *out = copy_string(amrkit::write_corpus(unwrap(corpus)));
  });
}

amrkit_status amrkit_corpus_write_file(const amrkit_corpus* corpus, const char* path) {
  return guarded([&] {
    require(corpus != nullptr && path != nullptr, "null argument");
    amrkit::write_corpus_file(unwrap(corpus), path);
  });
}

amrkit_status amrkit_score_corpus(const amrkit_corpus* predicted,
                                  const amrkit_corpus* reference,
                                  const amrkit_score_config* config, amrkit_score* total,
                                  amrkit_score* per_document) {
  return guarded([&] {
    require(predicted != nullptr && reference != nullptr && total != nullptr, "null argument");
    const auto result = amrkit::score_corpus(unwrap(predicted), unwrap(reference), from_c(config));
    *total = to_c(result.total);
    if (per_document != nullptr) {
      for (size_t i = 0; i < result.documents.size(); ++i)
        per_document[i] = to_c(result.documents[i].score);
    }
  });
}

amrkit_status amrkit_split(const amrkit_corpus* corpus, size_t train, size_t dev, size_t test,
                           uint64_t seed, amrkit_corpus** train_out, amrkit_corpus** dev_out,
                           amrkit_corpus** test_out) {
  return guarded([&] {
    require(corpus != nullptr && train_out != nullptr && dev_out != nullptr &&
                test_out != nullptr,
            "null argument");
    auto parts = amrkit::split(unwrap(corpus), {train, dev, test}, seed);
    *train_out = wrap(std::move(parts.train));
    *dev_out = wrap(std::move(parts.dev));
    *test_out = wrap(std::move(parts.test));
  });
}

amrkit_status amrkit_mix(const amrkit_corpus* primary, const amrkit_corpus* secondary,
                         size_t primary_parts, size_t secondary_parts, int64_t total,
                         uint64_t seed, amrkit_corpus** out) {
  return guarded([&] {
    require(primary != nullptr && secondary != nullptr && out != nullptr, "null argument");
    amrkit::MixSpec spec;
    spec.primary = &unwrap(primary);
    spec.secondary = &unwrap(secondary);
    spec.ratio = {primary_parts, secondary_parts};
    if (total >= 0) spec.total = static_cast<std::size_t>(total);
    spec.seed = seed;
    *out = wrap(amrkit::mix(spec));
  });
}

amrkit_status amrkit_curve(const amrkit_corpus* corpus, const size_t* sizes, size_t count,
                           uint64_t seed, int nested, amrkit_corpus** outs) {
  return guarded([&] {
    require(corpus != nullptr && outs != nullptr && (sizes != nullptr || count == 0),
            "null argument");
    auto snapshots = amrkit::subsample_curve(unwrap(corpus), std::span(sizes, count), seed,
                                             nested != 0);
    for (size_t k = 0; k < snapshots.size(); ++k) outs[k] = wrap(std::move(snapshots[k]));
  });
}

amrkit_status amrkit_iaa(const amrkit_corpus* const* sets, const char* const* labels,
                         size_t count, const amrkit_score_config* config,
                         amrkit_score* matrix) {
  return guarded([&] {
    require(sets != nullptr && labels != nullptr && matrix != nullptr, "null argument");
    std::vector<amrkit::LabeledCorpus> annotations;
    for (size_t i = 0; i < count; ++i) {
      require(sets[i] != nullptr && labels[i] != nullptr, "null annotation set");
      annotations.push_back({labels[i], &unwrap(sets[i])});
    }
    const auto result = amrkit::iaa(annotations, from_c(config));
    for (size_t i = 0; i < result.scores.size(); ++i) matrix[i] = to_c(result.scores[i]);
  });
}

amrkit_status amrkit_iaa_render(const amrkit_corpus* const* sets, const char* const* labels,
                                size_t count, const amrkit_score_config* config, char** out) {
  return guarded([&] {
    require(sets != nullptr && labels != nullptr && out != nullptr, "null argument");
    std::vector<amrkit::LabeledCorpus> annotations;
    for (size_t i = 0; i < count; ++i) {
      require(sets[i] != nullptr && labels[i] != nullptr, "null annotation set");
      annotations.push_back({labels[i], &unwrap(sets[i])});
    }
    *out = copy_string(amrkit::render_iaa(amrkit::iaa(annotations, from_c(config))));
  });
}

const char* amrkit_category_name(size_t index) {
  if (index >= amrkit::kAllCategories.size()) return nullptr;
  return amrkit::category_name(amrkit::kAllCategories[index]).data();
}

const char* amrkit_category_label(size_t index) {
  if (index >= amrkit::kAllCategories.size()) return nullptr;
  return amrkit::category_label(amrkit::kAllCategories[index]).data();
}

amrkit_status amrkit_score_category(const amrkit_graph* predicted,
                                    const amrkit_graph* reference, size_t category,
                                    const amrkit_score_config* config,
                                    const char* extra_ne_types, amrkit_score* out) {
  return guarded([&] {
    require(predicted != nullptr && reference != nullptr && out != nullptr, "null argument");
    require(category < amrkit::kAllCategories.size(), "unknown category index");
    *out = to_c(amrkit::score_category(unwrap(predicted), unwrap(reference),
                                       amrkit::kAllCategories[category], from_c(config),
                                       fine_options(config, extra_ne_types)));
  });
}

amrkit_status amrkit_fine_report(const amrkit_corpus* predicted,
                                 const amrkit_corpus* reference,
                                 const amrkit_score_config* config, const char* extra_ne_types,
                                 amrkit_score rows[AMRKIT_CATEGORY_COUNT]) {
  return guarded([&] {
    require(predicted != nullptr && reference != nullptr && rows != nullptr, "null argument");
    const auto report = amrkit::report(unwrap(predicted), unwrap(reference), from_c(config),
                                       fine_options(config, extra_ne_types));
    for (size_t c = 0; c < report.rows.size(); ++c) rows[c] = to_c(report.rows[c]);
  });
}

amrkit_status amrkit_fine_report_render(const amrkit_corpus* predicted,
                                        const amrkit_corpus* reference,
                                        const amrkit_score_config* config,
                                        const char* extra_ne_types, const char* format,
                                        const char* model_label, char** out) {
  return guarded([&] {
    require(predicted != nullptr && reference != nullptr && format != nullptr && out != nullptr,
            "null argument");
    const std::string fmt = format;
    require(fmt == "tsv" || fmt == "json" || fmt == "md", "format must be tsv, json or md");
    const auto report =
        amrkit::report(unwrap(predicted), unwrap(reference), from_c(config),
                       fine_options(config, extra_ne_types), model_label ? model_label : "");
    if (fmt == "tsv") *out = copy_string(amrkit::render_tsv(report));
    else if (fmt == "json") *out = copy_string(amrkit::render_json(report));
    else *out = copy_string(amrkit::render_markdown(report));
  });
}

amrkit_status amrkit_registry_parse(const char* text, amrkit_registry** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new amrkit_registry{amrkit::TemplateRegistry::parse(text)};
  });
}

amrkit_status amrkit_registry_load(const char* path, amrkit_registry** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new amrkit_registry{amrkit::TemplateRegistry::load(path)};
  });
}

void amrkit_registry_free(amrkit_registry* registry) { delete registry; }

size_t amrkit_registry_size(const amrkit_registry* registry) {
  return registry->registry.templates().size();
}

amrkit_status amrkit_template_match(const amrkit_registry* registry, const char* sentence,
                                    char** template_name, char** captures) {
  return guarded([&] {
    require(registry != nullptr && sentence != nullptr && template_name != nullptr &&
                captures != nullptr,
            "null argument");
    *template_name = nullptr;
    *captures = nullptr;
    auto match = amrkit::match_template(sentence, registry->registry);
    if (!match) return;
    std::string lines;
    for (const auto& [name, value] : match->captures) lines += name + "=" + value + "\n";
    *captures = copy_string(lines);
    *template_name = copy_string(match->templ->name());
  });
}

amrkit_status amrkit_template_fill(const amrkit_registry* registry, const char* template_name,
                                   const char* const* names, const char* const* values,
                                   size_t count, amrkit_graph** out) {
  return guarded([&] {
    require(registry != nullptr && template_name != nullptr && out != nullptr,
            "null argument");
    require(count == 0 || (names != nullptr && values != nullptr), "null capture arrays");
    const amrkit::Template* templ = nullptr;
    for (const auto& t : registry->registry.templates())
      if (t.name() == template_name) templ = &t;
    require(templ != nullptr, "unknown template name");
    amrkit::Captures captures;
    for (size_t i = 0; i < count; ++i) captures[names[i]] = values[i];
    *out = wrap(amrkit::fill(*templ, captures));
  });
}

amrkit_status amrkit_dictionary_parse(const char* text, const char* extra_ne_types,
                                      amrkit_dictionary** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new amrkit_dictionary{amrkit::NeDictionary::parse(text, all_ne_types(extra_ne_types))};
  });
}

amrkit_status amrkit_dictionary_load(const char* path, const char* extra_ne_types,
                                     amrkit_dictionary** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new amrkit_dictionary{amrkit::NeDictionary::load(path, all_ne_types(extra_ne_types))};
  });
}

void amrkit_dictionary_free(amrkit_dictionary* dictionary) { delete dictionary; }

size_t amrkit_dictionary_size(const amrkit_dictionary* dictionary) {
  return dictionary->dictionary.size();
}

amrkit_status amrkit_dictionary_lookup(const amrkit_dictionary* dictionary, const char* phrase,
                                       const amrkit_graph* host, amrkit_graph** out) {
  return guarded([&] {
    require(dictionary != nullptr && phrase != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    amrkit::VariableNamer namer =
        host == nullptr ? amrkit::VariableNamer() : amrkit::VariableNamer(unwrap(host));
    if (auto fragment = amrkit::lookup(phrase, dictionary->dictionary, namer))
      *out = wrap(std::move(*fragment));
  });
}

amrkit_status amrkit_templatize(const amrkit_registry* registry,
                                const amrkit_dictionary* dictionary, const char* sentences,
                                const char* id_prefix, amrkit_corpus** out,
                                char** unmatched_tsv) {
  return guarded([&] {
    require(registry != nullptr && sentences != nullptr && out != nullptr &&
                unmatched_tsv != nullptr,
            "null argument");
    static const amrkit::NeDictionary kEmpty;
    auto result = amrkit::templatize(sentences, registry->registry,
                                     dictionary == nullptr ? kEmpty : dictionary->dictionary,
                                     id_prefix == nullptr ? "snt" : id_prefix);
    std::string tsv = "line\tsentence\n";
    for (const auto& u : result.unmatched)
      tsv += std::to_string(u.line) + "\t" + u.sentence + "\n";
    *unmatched_tsv = copy_string(tsv);
    *out = wrap(std::move(result.corpus));
  });
}

}  // extern "C"
