#ifndef CUBEX_CUBEX_H
#define CUBEX_CUBEX_H

/* C interface to the cubex exact-computation core.
 *
 * Every function returns a status code; results come back through out
 * parameters.  Strings returned through char** are heap buffers owned by the
 * caller and must be released with cubex_free.  All numeric results that are
 * not integers are rendered as exact "num/den" strings; the library never
 * emits floating point.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  CUBEX_OK = 0,    /* success */
  CUBEX_ERROR = 1, /* I/O failure or internal error */
  CUBEX_PARSE = 2, /* malformed input: manifest, measure text, table, ... */
  CUBEX_LIMIT = 3  /* request exceeds a configured resource guard */
};

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* cubex_version(void);

/* Message from the most recent failing call on this thread. Static per-thread
 * storage; valid until the next failing call; do not free. */
const char* cubex_last_error(void);

/* Release a buffer returned through a char** out parameter. NULL is a no-op. */
void cubex_free(char* buf);

/* Run one experiment manifest (a JSON object with a "command" field).
 * On success *json_report receives the JSON report and, when the command
 * produces a table, *csv_report receives the CSV text; otherwise it is set to
 * NULL.  csv_report may itself be NULL if the caller does not want the table.
 * Identical manifest text yields byte-identical reports. */
int cubex_run_manifest(const char* manifest_json, char** json_report,
                       char** csv_report);

/* ---- exact measures on cube configurations ---- */

typedef struct cubex_measure cubex_measure;

int cubex_measure_load(const char* path, cubex_measure** out);
int cubex_measure_parse(const char* text, cubex_measure** out);
int cubex_measure_save(const cubex_measure* m, const char* path);
/* Canonical text form; loading it back reproduces the measure exactly. */
int cubex_measure_text(const cubex_measure* m, char** out);
void cubex_measure_free(cubex_measure* m);

int cubex_measure_dim(const cubex_measure* m);      /* cube dimension n */
int cubex_measure_alphabet(const cubex_measure* m); /* alphabet size k */
long long cubex_measure_support(const cubex_measure* m);
/* *out = 1 when the measure is invariant under all cube isometries, else 0. */
int cubex_measure_invariant(const cubex_measure* m, int* out);

/* ---- boolean functions given as hex truth tables (2^n bits) ---- */

/* Algebraic degree; the zero function reports -1. */
int cubex_fn_degree(int n, const char* hex_table, int* out);
/* Hamming distance to the closest function of degree <= r. */
int cubex_fn_rm_distance(int n, int r, const char* hex_table,
                         unsigned long long* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CUBEX_CUBEX_H */
