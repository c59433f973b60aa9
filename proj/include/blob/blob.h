#ifndef BLOB_BLOB_H
#define BLOB_BLOB_H

/* C interface to the blob library: optimal planar regions minimising the
 * scale-free mean pair distance D = M / A^(5/2) under L_p metrics.
 *
 * Every fallible call returns a blob_status. On failure the message is kept
 * per thread and can be read with blob_last_error(). Handles are opaque and
 * released with the matching *_free function (NULL is accepted).
 *
 * The metric parameter p is a double in [1, inf]; pass INFINITY for the
 * maximum metric. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BLOB_BUILDING)
#    define BLOB_API __declspec(dllexport)
#  else
#    define BLOB_API __declspec(dllimport)
#  endif
#else
#  define BLOB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum blob_status {
  BLOB_OK = 0,
  BLOB_E_INVALID_ARGUMENT = 1,
  BLOB_E_DOMAIN = 2,
  BLOB_E_INVALID_CURVE = 3,  /* blob_last_error_detail() names the invariant */
  BLOB_E_QUADRATURE = 4,
  BLOB_E_CONVERGENCE = 5,
  BLOB_E_IO = 6,
  BLOB_E_PARSE = 7,          /* blob_last_error_line() gives the line */
  BLOB_E_INTERNAL = 8
} blob_status;

typedef struct blob_curve blob_curve;
typedef struct blob_profile blob_profile;
typedef struct blob_ode_solution blob_ode_solution;
typedef struct blob_optimization blob_optimization;

BLOB_API const char* blob_version(void);
BLOB_API const char* blob_status_name(blob_status status);

/* Message of the last failure on this thread; "" if none. */
BLOB_API const char* blob_last_error(void);
/* Named invariant for BLOB_E_INVALID_CURVE; "" otherwise. */
BLOB_API const char* blob_last_error_detail(void);
/* 1-based line for BLOB_E_PARSE (0 for an empty file); -1 otherwise. */
BLOB_API int blob_last_error_line(void);

/* Worker threads for quadrature and sampling; n <= 0 restores the default. */
BLOB_API blob_status blob_set_threads(int n);
BLOB_API int blob_get_threads(void);

/* ---- curves ---------------------------------------------------------- */

typedef enum blob_interpolant {
  BLOB_INTERP_AUTO = 0,
  BLOB_INTERP_CHEBYSHEV = 1,
  BLOB_INTERP_RATIONAL = 2,
  BLOB_INTERP_MONOTONE_CUBIC = 3
} blob_interpolant;

/* "circle", "diamond" or "square". */
BLOB_API blob_status blob_curve_preset(const char* name, blob_curve** out);
/* Octant samples x in [0, 1] ascending, h(1) = 1. */
BLOB_API blob_status blob_curve_from_samples(const double* x, const double* h, size_t n,
                                             blob_interpolant kind, blob_curve** out);
/* CSV with header "x,w" (full curve over [0, a]) or "x,h" (octant). */
BLOB_API blob_status blob_curve_read_csv(const char* path, blob_interpolant kind, blob_curve** out);
/* full != 0 writes the "x,w" table, otherwise "x,h". */
BLOB_API blob_status blob_curve_write_csv(const blob_curve* c, const char* path, int full);
/* Outline drawn from the same samples as the "x,w" table. */
BLOB_API blob_status blob_curve_write_svg(const blob_curve* c, const char* path, const char* title);
/* Re-interpolates c on n Chebyshev-Lobatto nodes (n >= 3). */
BLOB_API blob_status blob_curve_resample(const blob_curve* c, int n, blob_curve** out);
BLOB_API void blob_curve_free(blob_curve* c);

BLOB_API blob_status blob_curve_eval(const blob_curve* c, double x, double* h, double* slope);
BLOB_API double blob_curve_a(const blob_curve* c);
BLOB_API size_t blob_curve_node_count(const blob_curve* c);
/* Copies min(cap, count) nodes and values; returns the count. */
BLOB_API size_t blob_curve_nodes(const blob_curve* c, double* x, double* h, size_t cap);
BLOB_API const char* blob_curve_interpolant(const blob_curve* c);
BLOB_API size_t blob_curve_warning_count(const blob_curve* c);
BLOB_API const char* blob_curve_warning(const blob_curve* c, size_t i);

/* Hausdorff distance between the boundary of a and the boundary of b after
 * b is rotated by `angle` radians and scaled by `scale`. */
BLOB_API blob_status blob_curve_hausdorff(const blob_curve* a, const blob_curve* b, double angle, double scale,
                                          double* out);

/* ---- functionals ----------------------------------------------------- */

typedef struct blob_quadrature {
  int points_per_axis;     /* >= 4 */
  int split_at_kinks;      /* nonzero splits panels where the integrand kinks */
  double relative_tolerance;
} blob_quadrature;

BLOB_API blob_quadrature blob_quadrature_default(void);

typedef enum blob_method {
  BLOB_METHOD_OCTANT = 0,
  BLOB_METHOD_FULL = 1
} blob_method;

typedef struct blob_functionals {
  double area;
  double m;
  double d;
  double error;  /* estimate for d */
} blob_functionals;

/* q may be NULL for defaults. scale evaluates the region scaled by that factor. */
BLOB_API blob_status blob_evaluate(const blob_curve* c, double p, const blob_quadrature* q, blob_method method,
                                   double scale, blob_functionals* out);

typedef struct blob_monte_carlo {
  double m;
  double m_standard_error;
  double d;
  double d_standard_error;
  uint64_t samples;
  double acceptance_rate;
} blob_monte_carlo;

/* Deterministic for a given seed, independent of the thread count. */
BLOB_API blob_status blob_evaluate_monte_carlo(const blob_curve* c, double p, uint64_t samples, uint64_t seed,
                                               blob_monte_carlo* out);

/* ---- variational ----------------------------------------------------- */

typedef enum blob_residual_form {
  BLOB_RESIDUAL_OCTANT = 0,   /* octant integral equation, t in (0, 1) */
  BLOB_RESIDUAL_FULL = 1,     /* full-boundary form, t in (-a, a) */
  BLOB_RESIDUAL_REDUCED_P1 = 2
} blob_residual_form;

/* Functional derivative of M with respect to h(t), t in (0, 1). */
BLOB_API blob_status blob_dm_dh(const blob_curve* c, double t, double p, const blob_quadrature* q, double* out);
BLOB_API double blob_da_dh(void);
BLOB_API blob_status blob_residual(const blob_curve* c, double t, double p, blob_residual_form form,
                                   const blob_quadrature* q, double* value, double* magnitude);
BLOB_API blob_status blob_residual_profile(const blob_curve* c, double p, int nodes, blob_residual_form form,
                                           const blob_quadrature* q, blob_profile** out);
BLOB_API size_t blob_profile_size(const blob_profile* prof);
BLOB_API blob_status blob_profile_node(const blob_profile* prof, size_t i, double* t, double* residual,
                                       double* normalized);
BLOB_API void blob_profile_norms(const blob_profile* prof, double* sup_norm, double* l2_norm);
BLOB_API void blob_profile_free(blob_profile* prof);

/* ---- special solvers ------------------------------------------------- */

BLOB_API blob_status blob_solve_p2(blob_curve** out);

typedef enum blob_ode_kind { BLOB_ODE_P1 = 0, BLOB_ODE_PINF = 1 } blob_ode_kind;

typedef struct blob_ode_options {
  double tol;
  int grid_size;
  int max_sweeps;
  double damping;
} blob_ode_options;

BLOB_API blob_ode_options blob_ode_options_default(void);

typedef struct blob_ode_summary {
  double a;             /* f'(0) */
  double f1;            /* self-consistent f(1) */
  double residual_sup;  /* governing equation on the grid */
  double hprime1;       /* achieved h'(1), not imposed */
  int iterations;       /* fixed-point sweeps */
  int shots;
  int grid_size;
  double tol;
} blob_ode_summary;

BLOB_API blob_status blob_solve_ode(blob_ode_kind kind, const blob_ode_options* opt, blob_ode_solution** out);
/* New curve handle owned by the caller. */
BLOB_API blob_status blob_ode_curve(const blob_ode_solution* s, blob_curve** out);
BLOB_API void blob_ode_summary_get(const blob_ode_solution* s, blob_ode_summary* out);
BLOB_API size_t blob_ode_grid(const blob_ode_solution* s, double* t, double* f, double* h, size_t cap);
BLOB_API void blob_ode_free(blob_ode_solution* s);

/* ---- optimizer ------------------------------------------------------- */

typedef enum blob_init { BLOB_INIT_CIRCLE = 0, BLOB_INIT_P1_SOLUTION = 1, BLOB_INIT_COEFFICIENTS = 2 } blob_init;

typedef struct blob_optimizer_options {
  int k;                    /* coefficients, 2..16 */
  blob_init init;
  const double* coefficients;  /* k values for BLOB_INIT_COEFFICIENTS */
  double perturbation;
  uint64_t seed;
  int budget;               /* objective evaluations for the simplex stages */
  int polish_iterations;
  int restarts;
  int multistart;
  int coarse_points;
  int fine_points;
  double certificate;       /* residual sup-norm bound */
  int residual_nodes;
} blob_optimizer_options;

BLOB_API blob_optimizer_options blob_optimizer_options_default(void);

typedef enum blob_termination {
  BLOB_TERM_CONVERGED_D = 0,
  BLOB_TERM_CONVERGED_RESIDUAL = 1,
  BLOB_TERM_MAX_ITER = 2
} blob_termination;

typedef struct blob_optimization_summary {
  blob_termination termination;
  int certified;
  int evaluations;
  int polish_steps;
  double initial_d;
  double initial_residual_sup;
  double final_d;
  double final_residual_sup;
  size_t iterates;
  size_t multistart;
} blob_optimization_summary;

BLOB_API blob_status blob_optimize(double p, const blob_optimizer_options* opt, blob_optimization** out);
BLOB_API blob_status blob_optimization_curve(const blob_optimization* o, blob_curve** out);
BLOB_API void blob_optimization_summary_get(const blob_optimization* o, blob_optimization_summary* out);
BLOB_API blob_status blob_optimization_iterate(const blob_optimization* o, size_t i, double* d, double* residual_sup);
BLOB_API size_t blob_optimization_coefficients(const blob_optimization* o, double* out, size_t cap);
BLOB_API blob_status blob_optimization_multistart_d(const blob_optimization* o, size_t i, double* d);
BLOB_API void blob_optimization_free(blob_optimization* o);

#ifdef __cplusplus
}
#endif

#endif
