/*
 * amrkit C API.
 *
 * Every fallible call returns an amrkit_status; on failure the message is
 * available from amrkit_last_error() on the same thread until the next call.
 * Objects are opaque handles released with their *_free function. Strings
 * and string arrays returned through out-parameters are owned by the caller
 * and released with amrkit_string_free / amrkit_string_array_free.
 */
#ifndef AMRKIT_AMRKIT_H_
#define AMRKIT_AMRKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AMRKIT_API __declspec(dllexport)
#else
#define AMRKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amrkit_status {
  AMRKIT_OK = 0,
  AMRKIT_ERR_PARSE = 1,
  AMRKIT_ERR_INVALID_GRAPH = 2,
  AMRKIT_ERR_INVALID_ARGUMENT = 3,
  AMRKIT_ERR_MISMATCH = 4,
  AMRKIT_ERR_CAP_EXCEEDED = 5,
  AMRKIT_ERR_INSUFFICIENT_DATA = 6,
  AMRKIT_ERR_IO = 7,
  AMRKIT_ERR_INTERNAL = 8
} amrkit_status;

typedef struct amrkit_graph amrkit_graph;
typedef struct amrkit_corpus amrkit_corpus;
typedef struct amrkit_registry amrkit_registry;
typedef struct amrkit_dictionary amrkit_dictionary;

AMRKIT_API const char* amrkit_version(void);
AMRKIT_API const char* amrkit_status_name(amrkit_status status);
AMRKIT_API const char* amrkit_last_error(void);
AMRKIT_API void amrkit_string_free(char* s);
AMRKIT_API void amrkit_string_array_free(char** items, size_t count);

/* ---- graphs ---------------------------------------------------------- */

AMRKIT_API amrkit_status amrkit_graph_parse(const char* text, amrkit_graph** out);
AMRKIT_API amrkit_graph* amrkit_graph_clone(const amrkit_graph* graph);
AMRKIT_API void amrkit_graph_free(amrkit_graph* graph);
AMRKIT_API int amrkit_graph_equal(const amrkit_graph* a, const amrkit_graph* b);
AMRKIT_API const char* amrkit_graph_root(const amrkit_graph* graph);
AMRKIT_API size_t amrkit_graph_node_count(const amrkit_graph* graph);
AMRKIT_API size_t amrkit_graph_edge_count(const amrkit_graph* graph);
AMRKIT_API size_t amrkit_graph_attribute_count(const amrkit_graph* graph);

/* indent < 0 writes a single line. */
AMRKIT_API amrkit_status amrkit_graph_serialize(const amrkit_graph* graph, int indent,
                                                char** out);

/* One "kind: message" line per diagnostic; *count is 0 for a valid graph. */
AMRKIT_API amrkit_status amrkit_graph_validate(const amrkit_graph* graph, char** diagnostics,
                                               size_t* count);

/* One "role(source, target)" line per triple. */
AMRKIT_API amrkit_status amrkit_graph_triples(const amrkit_graph* graph, int top_triple,
                                              char** out);

AMRKIT_API amrkit_status amrkit_graph_linearize(const amrkit_graph* graph, char*** tokens,
                                                size_t* count);
AMRKIT_API amrkit_status amrkit_graph_delinearize(const char* const* tokens, size_t count,
                                                  amrkit_graph** out);

/* ---- scoring --------------------------------------------------------- */

typedef struct amrkit_score {
  uint64_t n_correct;
  uint64_t n_predicted;
  uint64_t n_reference;
  double precision;
  double recall;
  double f1;
} amrkit_score;

typedef enum amrkit_exact_mode {
  AMRKIT_EXACT_AUTO = 0,
  AMRKIT_EXACT_ALWAYS = 1,
  AMRKIT_EXACT_NEVER = 2
} amrkit_exact_mode;

typedef struct amrkit_score_config {
  uint32_t restarts;
  uint64_t seed;
  uint32_t exact_cap;
  amrkit_exact_mode exact_mode;
  int top_triple;
  uint32_t threads; /* 0: hardware concurrency */
} amrkit_score_config;

/* restarts 4, seed 42, exact_cap 8, AMRKIT_EXACT_AUTO, no TOP triple, 1 thread. */
AMRKIT_API void amrkit_score_config_init(amrkit_score_config* config);

AMRKIT_API amrkit_status amrkit_score_pair(const amrkit_graph* predicted,
                                           const amrkit_graph* reference,
                                           const amrkit_score_config* config,
                                           const char* document_id, amrkit_score* out);

/* ---- corpora --------------------------------------------------------- */

/* source_tag may be NULL. */
AMRKIT_API amrkit_status amrkit_corpus_parse(const char* text, const char* name,
                                             const char* source_tag, amrkit_corpus** out);
AMRKIT_API amrkit_status amrkit_corpus_read_file(const char* path, const char* source_tag,
                                                 amrkit_corpus** out);
AMRKIT_API void amrkit_corpus_free(amrkit_corpus* corpus);
AMRKIT_API size_t amrkit_corpus_size(const amrkit_corpus* corpus);
AMRKIT_API const char* amrkit_corpus_name(const amrkit_corpus* corpus);
AMRKIT_API const char* amrkit_corpus_document_id(const amrkit_corpus* corpus, size_t index);
AMRKIT_API const char* amrkit_corpus_document_source_tag(const amrkit_corpus* corpus,
                                                         size_t index);
/* Borrowed; valid while the corpus lives. */
AMRKIT_API const amrkit_graph* amrkit_corpus_document_graph(const amrkit_corpus* corpus,
                                                            size_t index);
AMRKIT_API amrkit_status amrkit_corpus_serialize(const amrkit_corpus* corpus, char** out);
AMRKIT_API amrkit_status amrkit_corpus_write_file(const amrkit_corpus* corpus,
                                                  const char* path);

/* per_document may be NULL; otherwise it holds amrkit_corpus_size(predicted)
 * entries in predicted-corpus order. */
AMRKIT_API amrkit_status amrkit_score_corpus(const amrkit_corpus* predicted,
                                             const amrkit_corpus* reference,
                                             const amrkit_score_config* config,
                                             amrkit_score* total, amrkit_score* per_document);

AMRKIT_API amrkit_status amrkit_split(const amrkit_corpus* corpus, size_t train, size_t dev,
                                      size_t test, uint64_t seed, amrkit_corpus** train_out,
                                      amrkit_corpus** dev_out, amrkit_corpus** test_out);

/* total < 0 uses every primary document. */
AMRKIT_API amrkit_status amrkit_mix(const amrkit_corpus* primary,
                                    const amrkit_corpus* secondary, size_t primary_parts,
                                    size_t secondary_parts, int64_t total, uint64_t seed,
                                    amrkit_corpus** out);

/* outs must hold `count` handles. */
AMRKIT_API amrkit_status amrkit_curve(const amrkit_corpus* corpus, const size_t* sizes,
                                      size_t count, uint64_t seed, int nested,
                                      amrkit_corpus** outs);

/* matrix holds count * count scores, row i scored as predicted against j. */
AMRKIT_API amrkit_status amrkit_iaa(const amrkit_corpus* const* sets, const char* const* labels,
                                    size_t count, const amrkit_score_config* config,
                                    amrkit_score* matrix);

/* TSV with one "a vs b" row per unordered pair. */
AMRKIT_API amrkit_status amrkit_iaa_render(const amrkit_corpus* const* sets,
                                           const char* const* labels, size_t count,
                                           const amrkit_score_config* config, char** out);

/* ---- fine-grained evaluation ----------------------------------------- */

#define AMRKIT_CATEGORY_COUNT 8

AMRKIT_API const char* amrkit_category_name(size_t index);
AMRKIT_API const char* amrkit_category_label(size_t index);

/* extra_ne_types: newline-separated NE types added to the clinical six, or NULL. */
AMRKIT_API amrkit_status amrkit_score_category(const amrkit_graph* predicted,
                                               const amrkit_graph* reference, size_t category,
                                               const amrkit_score_config* config,
                                               const char* extra_ne_types, amrkit_score* out);

AMRKIT_API amrkit_status amrkit_fine_report(const amrkit_corpus* predicted,
                                            const amrkit_corpus* reference,
                                            const amrkit_score_config* config,
                                            const char* extra_ne_types,
                                            amrkit_score rows[AMRKIT_CATEGORY_COUNT]);

/* format: "tsv", "json" or "md". */
AMRKIT_API amrkit_status amrkit_fine_report_render(const amrkit_corpus* predicted,
                                                   const amrkit_corpus* reference,
                                                   const amrkit_score_config* config,
                                                   const char* extra_ne_types,
                                                   const char* format,
                                                   const char* model_label, char** out);

/* ---- templates and NE dictionary ------------------------------------- */

AMRKIT_API amrkit_status amrkit_registry_parse(const char* text, amrkit_registry** out);
AMRKIT_API amrkit_status amrkit_registry_load(const char* path, amrkit_registry** out);
AMRKIT_API void amrkit_registry_free(amrkit_registry* registry);
AMRKIT_API size_t amrkit_registry_size(const amrkit_registry* registry);

/* *template_name is NULL when nothing matches; captures are "name=value" lines. */
AMRKIT_API amrkit_status amrkit_template_match(const amrkit_registry* registry,
                                               const char* sentence, char** template_name,
                                               char** captures);

AMRKIT_API amrkit_status amrkit_template_fill(const amrkit_registry* registry,
                                              const char* template_name,
                                              const char* const* names,
                                              const char* const* values, size_t count,
                                              amrkit_graph** out);

AMRKIT_API amrkit_status amrkit_dictionary_parse(const char* text, const char* extra_ne_types,
                                                 amrkit_dictionary** out);
AMRKIT_API amrkit_status amrkit_dictionary_load(const char* path, const char* extra_ne_types,
                                                amrkit_dictionary** out);
AMRKIT_API void amrkit_dictionary_free(amrkit_dictionary* dictionary);
AMRKIT_API size_t amrkit_dictionary_size(const amrkit_dictionary* dictionary);

/* *out is NULL when the phrase is absent. Variables are renamed to avoid the
 * ids of `host`, which may be NULL. */
AMRKIT_API amrkit_status amrkit_dictionary_lookup(const amrkit_dictionary* dictionary,
                                                  const char* phrase,
                                                  const amrkit_graph* host,
                                                  amrkit_graph** out);

/* unmatched_tsv receives "line<TAB>sentence" rows with a header. */
AMRKIT_API amrkit_status amrkit_templatize(const amrkit_registry* registry,
                                           const amrkit_dictionary* dictionary,
                                           const char* sentences, const char* id_prefix,
                                           amrkit_corpus** out, char** unmatched_tsv);

#ifdef __cplusplus
}
#endif

#endif /* AMRKIT_AMRKIT_H_ */
