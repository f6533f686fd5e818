#ifndef CSG_H
#define CSG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum CsgStatus {
  CSG_STATUS_OK = 0,
  CSG_STATUS_NULL_POINTER = 1,
  CSG_STATUS_INVALID_UTF8 = 2,
  CSG_STATUS_INPUT = 3,
  CSG_STATUS_VALIDATION = 4,
  CSG_STATUS_DOMAIN = 5,
  CSG_STATUS_CAPACITY = 6,
  CSG_STATUS_IO = 7,
  CSG_STATUS_PANIC = 8,
} CsgStatus;

/**
 * Opaque handle to one complete game, stored as canonical invariants.
 */
typedef struct CsgGame CsgGame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *csg_last_error(void);

/**
 * Library version as a static string.
 */
const char *csg_version(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void csg_string_free(char *s);

/**
 * Parses game, invariant or weighted JSON into a new handle.
 *
 * # Safety
 * `json` is a nul-terminated string and `out` is writable.
 */
enum CsgStatus csg_game_parse(const char *json, struct CsgGame **out);

/**
 * # Safety
 * `game` is null or a live handle from this library.
 */
void csg_game_free(struct CsgGame *game);

/**
 * Number of voters, or 0 for a null handle.
 *
 * # Safety
 * `game` is null or a live handle.
 */
uint32_t csg_game_n(const struct CsgGame *game);

/**
 * Number of equivalence classes, or 0 for a null handle.
 *
 * # Safety
 * `game` is null or a live handle.
 */
uint32_t csg_game_t(const struct CsgGame *game);

/**
 * Number of shift-minimal winning profiles, or 0 for a null handle.
 *
 * # Safety
 * `game` is null or a live handle.
 */
uint32_t csg_game_r(const struct CsgGame *game);

/**
 * Canonical invariant JSON.
 *
 * # Safety
 * `game` is a live handle and `out` is writable.
 */
enum CsgStatus csg_game_invariants_json(const struct CsgGame *game, char **out);

/**
 * Canonical minimal-winning-coalition JSON of the expanded game.
 *
 * # Safety
 * `game` is a live handle and `out` is writable.
 */
enum CsgStatus csg_game_expand_json(const struct CsgGame *game, char **out);

/**
 * Role report as JSON. With `structural` set, roles are read off the
 * invariants instead of the coalitions.
 *
 * # Safety
 * `game` is a live handle and `out` is writable.
 */
enum CsgStatus csg_game_roles_json(const struct CsgGame *game, bool structural, char **out);

/**
 * New handle holding the dual game.
 *
 * # Safety
 * `game` is a live handle and `out` is writable.
 */
enum CsgStatus csg_game_dual(const struct CsgGame *game, struct CsgGame **out);

/**
 * New handle holding the image under bijection `name` (`f`, `g`, `h`, `k`,
 * `h1`, `h2`), or its inverse.
 *
 * # Safety
 * `game` is a live handle, `name` a nul-terminated string, `out` writable.
 */
enum CsgStatus csg_game_map(const struct CsgGame *game,
                            const char *name,
                            bool inverse,
                            struct CsgGame **out);

/**
 * Counts games with `n` voters and `t` classes as a decimal string.
 * `rows` of 0 means any number of rows. `with` and `without` are
 * comma-separated role names or null.
 *
 * # Safety
 * `with` and `without` are null or nul-terminated; `out` is writable.
 */
enum CsgStatus csg_count(uint32_t n,
                         uint32_t t,
                         uint32_t rows,
                         const char *with,
                         const char *without,
                         uint32_t jobs,
                         char **out);

/**
 * Evaluates a closed-form family as a decimal string. `t` is ignored unless
 * `has_t` is set.
 *
 * # Safety
 * `family` is nul-terminated and `out` is writable.
 */
enum CsgStatus csg_formula(const char *family, uint64_t n, uint64_t t, bool has_t, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CSG_H */
