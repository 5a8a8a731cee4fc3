/* brnr: unramified Brauer groups of homogeneous spaces with finite stabilizer,
 * computed through finite-gerb group cohomology.
 *
 * C API over the computation core. All functions are thread-compatible: a
 * session may be used from one thread at a time; distinct sessions are
 * independent. Strings returned through char** are heap-allocated and must be
 * released with brnr_string_free.
 */

#ifndef BRNR_H
#define BRNR_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct brnr_session brnr_session; /* opaque */
typedef struct brnr_group brnr_group;     /* opaque */
typedef struct brnr_gerb brnr_gerb;       /* opaque */

typedef enum brnr_status {
  BRNR_OK = 0,
  BRNR_E_PARSE = 1,          /* malformed JSON */
  BRNR_E_SCHEMA = 2,         /* well-formed JSON violating a schema */
  BRNR_E_VALIDATION = 3,     /* mathematical validation failed (witness in message) */
  BRNR_E_LIMIT = 4,          /* a configured cap was exceeded */
  BRNR_E_UNSUPPORTED = 5,    /* e.g. essentially-real without odd-part mode */
  BRNR_E_COUNTEREXAMPLE = 6, /* a verification suite found a counterexample */
  BRNR_E_INTERNAL = 7
} brnr_status;

const char* brnr_version(void);

brnr_session* brnr_session_new(void);
void brnr_session_free(brnr_session* s);

/* options: "cache_dir" (path), "order_cap" (int), "jobs" (int) */
brnr_status brnr_session_set_option(brnr_session* s, const char* key, const char* value);

/* message for the most recent failing call on this session; owned by the
 * session, valid until the next call */
const char* brnr_last_error(const brnr_session* s);

/* groups ------------------------------------------------------------- */

/* json: {"type":"table","table":[[...]]} or
 *       {"type":"perm","degree":k,"generators":[[...],...]} */
brnr_group* brnr_group_from_json(brnr_session* s, const char* json);
void brnr_group_free(brnr_group* g);
int brnr_group_order(const brnr_group* g);
int brnr_group_is_abelian(const brnr_group* g);
/* canonical content hash of the multiplication table, 16 hex digits */
brnr_status brnr_group_hash(brnr_session* s, const brnr_group* g, char** hex_out);
brnr_status brnr_group_to_json(brnr_session* s, const brnr_group* g, char** json_out);

/* gerbs -------------------------------------------------------------- */

/* split form:    {"F": group, "Gamma": group, "action": [...],
 *                 "mu": n, "character": {...}}
 * explicit form: {"E": group, "F": [members], "pi": [...], "mu": n, ...} */
brnr_gerb* brnr_gerb_from_json(brnr_session* s, const char* json);
void brnr_gerb_free(brnr_gerb* g);
int brnr_gerb_is_split(const brnr_gerb* g);
int brnr_gerb_order(const brnr_gerb* g);

/* jobs ---------------------------------------------------------------- */

/* Runs a job described by a JSON object:
 *   {"command": "cohomology"|"sha"|"brnr"|"sections"|"evaluate"|
 *               "verify"|"catalog", ...}
 * and returns the report as JSON. Reports are byte-identical for identical
 * inputs, options and tool version. Returns BRNR_E_COUNTEREXAMPLE when a
 * verification suite fails; report_out is still populated in that case. */
brnr_status brnr_run_job(brnr_session* s, const char* job_json, char** report_out);

void brnr_string_free(char* p);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BRNR_H */
