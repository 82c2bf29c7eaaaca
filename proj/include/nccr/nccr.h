#ifndef NCCR_H
#define NCCR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define NCCR_API __attribute__((visibility("default")))
#else
#define NCCR_API
#endif

typedef enum {
    NCCR_OK = 0,
    NCCR_ERR_DIMENSION_MISMATCH = 1,
    NCCR_ERR_DEGENERATE,
    NCCR_ERR_NO_INTERIOR_ORIGIN,
    NCCR_ERR_NOT_FULL_DIMENSIONAL,
    NCCR_ERR_NOT_Q_GORENSTEIN,
    NCCR_ERR_RAYS_DO_NOT_SPAN,
    NCCR_ERR_NOT_COMPLETE,
    NCCR_ERR_NOT_SIMPLICIAL,
    NCCR_ERR_POINT_ON_EXISTING_RAY,
    NCCR_ERR_POINT_OUTSIDE_SUPPORT,
    NCCR_ERR_TOO_MANY_RAYS,
    NCCR_ERR_BOX_TOO_SMALL,
    NCCR_ERR_INVALID_CHARACTER,
    NCCR_ERR_ZERO_TWIST,
    NCCR_ERR_PICARD_RANK_TOO_HIGH,
    NCCR_ERR_NOT_REFLEXIVE_FACE_FAN,
    NCCR_ERR_UNKNOWN_EXAMPLE,
    NCCR_ERR_PARSE,
    NCCR_ERR_INVALID_ARGUMENT,
    NCCR_ERR_INTERNAL
} nccr_status;

typedef enum {
    NCCR_VERDICT_CERTIFIED = 0,
    NCCR_VERDICT_CONDITIONAL = 1,
    NCCR_VERDICT_FAILED = 2,
    NCCR_VERDICT_NOT_APPLICABLE = 3
} nccr_verdict;

typedef struct nccr_polytope nccr_polytope;
typedef struct nccr_config nccr_config;
typedef struct nccr_certificate nccr_certificate;

NCCR_API const char* nccr_version(void);
NCCR_API const char* nccr_status_name(nccr_status s);
/* Message of the last failed call on this thread; never NULL. */
NCCR_API const char* nccr_last_error_message(void);
/* Releases strings returned through char** out-parameters. */
NCCR_API void nccr_string_free(char* s);

/* Polytope document: {"schema":1,"vertices":[[...],...],"name":"..."}. */
NCCR_API nccr_status nccr_polytope_parse(const char* bytes, size_t len, nccr_polytope** out);
/* coords holds count points of dim entries each, row by row. */
NCCR_API nccr_status nccr_polytope_from_vertices(size_t dim, size_t count, const long* coords, nccr_polytope** out);
NCCR_API size_t nccr_polytope_dim(const nccr_polytope* p);
NCCR_API size_t nccr_polytope_vertex_count(const nccr_polytope* p);
/* NULL when the document had no name. */
NCCR_API const char* nccr_polytope_name(const nccr_polytope* p);
NCCR_API size_t nccr_polytope_warning_count(const nccr_polytope* p);
NCCR_API const char* nccr_polytope_warning(const nccr_polytope* p, size_t i);
NCCR_API void nccr_polytope_free(nccr_polytope* p);

NCCR_API nccr_status nccr_config_new(nccr_config** out);
NCCR_API void nccr_config_free(nccr_config* c);
NCCR_API nccr_status nccr_config_set_lmax(nccr_config* c, long l_max);
NCCR_API nccr_status nccr_config_set_subdivide(nccr_config* c, int on);
NCCR_API nccr_status nccr_config_set_oracle(nccr_config* c, int on);
NCCR_API nccr_status nccr_config_set_prefer_window(nccr_config* c, int on);
NCCR_API nccr_status nccr_config_set_index_cap(nccr_config* c, long cap);
NCCR_API nccr_status nccr_config_set_interior_point(nccr_config* c, size_t dim, const long* coords);

/* config may be NULL for defaults; name may be NULL (falls back to the document name). */
NCCR_API nccr_status nccr_certify(const nccr_polytope* p, const nccr_config* c, const char* name,
                                  nccr_certificate** out);
NCCR_API nccr_status nccr_certificate_parse(const char* bytes, size_t len, nccr_certificate** out);
NCCR_API nccr_verdict nccr_certificate_verdict(const nccr_certificate* c);
/* indent < 0 gives compact output. */
NCCR_API nccr_status nccr_certificate_json(const nccr_certificate* c, int indent, char** out);
NCCR_API nccr_status nccr_certificate_text(const nccr_certificate* c, char** out);
/* Re-executes the certificate; *identical is 1 when every step reproduces. */
NCCR_API nccr_status nccr_certificate_replay(const nccr_certificate* c, int* identical, char** difference);
NCCR_API void nccr_certificate_free(nccr_certificate* c);

/* Fan document: {"dim":n,"rays":[[...]],"max_cones":[[i,...]]}; divisor: JSON array of ray coefficients.
   Writes {"dims":[h^0,...,h^n]} plus an "oracle" entry when oracle is nonzero. */
NCCR_API nccr_status nccr_cohomology(const char* fan_json, const char* divisor_json, int oracle, int indent, char** out);
/* Predicates, class group and per-cone Gorenstein elements. */
NCCR_API nccr_status nccr_fan_info(const char* fan_json, int indent, char** out);

NCCR_API size_t nccr_example_count(void);
NCCR_API const char* nccr_example_name(size_t i);
/* Report with checks and certificates; *passed is 1 when every check passes. */
NCCR_API nccr_status nccr_run_example(const char* name, const nccr_config* c, int as_text, int indent, int* passed,
                                      char** out);

#ifdef __cplusplus
}
#endif

#endif
