#include "blob/blob.h"

#include <cmath>
#include <fstream>
#include <new>
#include <string>

#include "core/curve.hpp"
#include "core/curve_io.hpp"
#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/optimizer.hpp"
#include "core/parallel.hpp"
#include "core/special_solvers.hpp"
#include "core/variational.hpp"

#ifndef BLOB_VERSION
#define BLOB_VERSION "0.0.0"
#endif

struct blob_curve {
  blob::OctantCurve curve;
};
struct blob_profile {
  blob::ResidualProfile profile;
};
struct blob_ode_solution {
  blob::OctantCurve curve;
  blob::OdeSolution solution;
  blob::OdeOptions options;
};
struct blob_optimization {
  blob::OptimizationResult result;
};

namespace {

struct LastError {
  std::string message;
  std::string detail;
  int line = -1;
};

thread_local LastError t_error;

blob_status map_code(blob::ErrorCode c) {
  switch (c) {
    case blob::ErrorCode::invalid_argument: return BLOB_E_INVALID_ARGUMENT;
    case blob::ErrorCode::domain: return BLOB_E_DOMAIN;
    case blob::ErrorCode::invalid_curve: return BLOB_E_INVALID_CURVE;
    case blob::ErrorCode::quadrature: return BLOB_E_QUADRATURE;
    case blob::ErrorCode::convergence: return BLOB_E_CONVERGENCE;
    case blob::ErrorCode::io: return BLOB_E_IO;
    case blob::ErrorCode::parse: return BLOB_E_PARSE;
    case blob::ErrorCode::internal: return BLOB_E_INTERNAL;
  }
  return BLOB_E_INTERNAL;
}

blob_status fail(blob_status s, std::string msg) {
  t_error = {std::move(msg), "", -1};
  return s;
}

// Runs f and turns any exception into a status plus thread-local message.
template <class F>
blob_status guarded(F&& f) {
  try {
    t_error = {};
    f();
    return BLOB_OK;
  } catch (const blob::ParseError& e) {
    t_error = {e.what(), "", e.line()};
    return BLOB_E_PARSE;
  } catch (const blob::InvalidCurve& e) {
    t_error = {e.what(), e.invariant(), -1};
    return BLOB_E_INVALID_CURVE;
  } catch (const blob::Error& e) {
    t_error = {e.what(), "", -1};
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    return fail(BLOB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BLOB_E_INTERNAL, e.what());
  } catch (...) {
    return fail(BLOB_E_INTERNAL, "unknown failure");
  }
}

blob::PNorm to_pnorm(double p) {
  if (std::isinf(p) && p > 0) return blob::PNorm::infinity();
  return blob::PNorm::finite(p);
}

blob::QuadratureSpec to_spec(const blob_quadrature* q) {
  blob::QuadratureSpec s;
  if (q) {
    s.points_per_axis = q->points_per_axis;
    s.split_at_kinks = q->split_at_kinks != 0;
    s.relative_tolerance = q->relative_tolerance;
  }
  s.validate();
  return s;
}

blob::Interpolant to_interp(blob_interpolant k) {
  switch (k) {
    case BLOB_INTERP_AUTO: return blob::Interpolant::automatic;
    case BLOB_INTERP_CHEBYSHEV: return blob::Interpolant::chebyshev;
    case BLOB_INTERP_RATIONAL: return blob::Interpolant::rational;
    case BLOB_INTERP_MONOTONE_CUBIC: return blob::Interpolant::monotone_cubic;
  }
  throw blob::Error(blob::ErrorCode::invalid_argument, "unknown interpolant");
}

blob::ResidualForm to_form(blob_residual_form f) {
  switch (f) {
    case BLOB_RESIDUAL_OCTANT: return blob::ResidualForm::octant;
    case BLOB_RESIDUAL_FULL: return blob::ResidualForm::full;
    case BLOB_RESIDUAL_REDUCED_P1: return blob::ResidualForm::reduced_p1;
  }
  throw blob::Error(blob::ErrorCode::invalid_argument, "unknown residual form");
}

void need(const void* p, const char* what) {
  if (!p) throw blob::Error(blob::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

void write_file(const char* path, const std::string& what, auto&& writer) {
  need(path, "path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw blob::Error(blob::ErrorCode::io, "cannot open " + std::string(path) + " for " + what);
  writer(out);
  out.close();
  if (!out) throw blob::Error(blob::ErrorCode::io, "failed writing " + std::string(path));
}

blob_curve* wrap(blob::OctantCurve c) { return new blob_curve{std::move(c)}; }

}  // namespace

extern "C" {

const char* blob_version(void) { return BLOB_VERSION; }

const char* blob_status_name(blob_status s) {
  switch (s) {
    case BLOB_OK: return "ok";
    case BLOB_E_INVALID_ARGUMENT: return "invalid_argument";
    case BLOB_E_DOMAIN: return "domain";
    case BLOB_E_INVALID_CURVE: return "invalid_curve";
    case BLOB_E_QUADRATURE: return "quadrature";
    case BLOB_E_CONVERGENCE: return "convergence";
    case BLOB_E_IO: return "io";
    case BLOB_E_PARSE: return "parse";
    case BLOB_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* blob_last_error(void) { return t_error.message.c_str(); }
const char* blob_last_error_detail(void) { return t_error.detail.c_str(); }
int blob_last_error_line(void) { return t_error.line; }

blob_status blob_set_threads(int n) {
  return guarded([&] { blob::set_thread_count(n); });
}
int blob_get_threads(void) { return blob::thread_count(); }

blob_status blob_curve_preset(const char* name, blob_curve** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    std::string n(name);
    if (n == "circle") {
      *out = wrap(blob::circle_octant());
    } else if (n == "diamond") {
      *out = wrap(blob::diamond_octant());
    } else if (n == "square") {
      *out = wrap(blob::square_octant());
    } else {
      throw blob::Error(blob::ErrorCode::invalid_argument, "unknown preset '" + n + "'");
    }
  });
}

blob_status blob_curve_from_samples(const double* x, const double* h, size_t n, blob_interpolant kind,
                                    blob_curve** out) {
  return guarded([&] {
    need(x, "x");
    need(h, "h");
    need(out, "out");
    *out = wrap(blob::OctantCurve::from_samples(std::vector<double>(x, x + n), std::vector<double>(h, h + n),
                                                to_interp(kind)));
  });
}

blob_status blob_curve_read_csv(const char* path, blob_interpolant kind, blob_curve** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(blob::curve_from_samples(blob::read_curve_csv_file(path), to_interp(kind)));
  });
}

blob_status blob_curve_write_csv(const blob_curve* c, const char* path, int full) {
  return guarded([&] {
    need(c, "curve");
    auto s = full ? blob::full_samples(c->curve) : blob::octant_samples(c->curve);
    write_file(path, "the curve table", [&](std::ostream& o) { blob::write_curve_csv(o, s); });
  });
}

blob_status blob_curve_write_svg(const blob_curve* c, const char* path, const char* title) {
  return guarded([&] {
    need(c, "curve");
    auto s = blob::full_samples(c->curve);
    write_file(path, "the outline", [&](std::ostream& o) { blob::write_svg(o, s, title ? title : ""); });
  });
}

blob_status blob_curve_resample(const blob_curve* c, int n, blob_curve** out) {
  return guarded([&] {
    need(c, "curve");
    need(out, "out");
    if (n < 3) throw blob::Error(blob::ErrorCode::invalid_argument, "resampling needs at least three nodes");
    const blob::OctantCurve& src = c->curve;
    *out = wrap(blob::OctantCurve::chebyshev([&](double x) { return src.value(x); }, n, src.origin()));
  });
}

void blob_curve_free(blob_curve* c) { delete c; }

blob_status blob_curve_eval(const blob_curve* c, double x, double* h, double* slope) {
  return guarded([&] {
    need(c, "curve");
    if (h) *h = c->curve.value(x);
    if (slope) *slope = c->curve.slope(x);
  });
}

double blob_curve_a(const blob_curve* c) { return c ? c->curve.a() : NAN; }
size_t blob_curve_node_count(const blob_curve* c) { return c ? c->curve.nodes().size() : 0; }

size_t blob_curve_nodes(const blob_curve* c, double* x, double* h, size_t cap) {
  if (!c) return 0;
  const auto& nx = c->curve.nodes();
  const auto& nh = c->curve.values();
  for (size_t i = 0; i < nx.size() && i < cap; ++i) {
    if (x) x[i] = nx[i];
    if (h) h[i] = nh[i];
  }
  return nx.size();
}

const char* blob_curve_interpolant(const blob_curve* c) {
  if (!c) return "";
  switch (c->curve.interpolant()) {
    case blob::Interpolant::automatic: return "automatic";
    case blob::Interpolant::chebyshev: return "chebyshev";
    case blob::Interpolant::rational: return "rational";
    case blob::Interpolant::monotone_cubic: return "monotone_cubic";
    case blob::Interpolant::analytic: return "analytic";
  }
  return "";
}

size_t blob_curve_warning_count(const blob_curve* c) { return c ? c->curve.warnings().size() : 0; }
const char* blob_curve_warning(const blob_curve* c, size_t i) {
  if (!c || i >= c->curve.warnings().size()) return "";
  return c->curve.warnings()[i].c_str();
}

blob_status blob_curve_hausdorff(const blob_curve* a, const blob_curve* b, double angle, double scale, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    auto pa = blob::boundary_polygon(a->curve);
    auto pb = blob::rotate_scale(blob::boundary_polygon(b->curve), angle, scale);
    *out = blob::hausdorff_distance(pa, pb);
  });
}

blob_quadrature blob_quadrature_default(void) {
  blob::QuadratureSpec s;
  return {s.points_per_axis, s.split_at_kinks ? 1 : 0, s.relative_tolerance};
}

blob_status blob_evaluate(const blob_curve* c, double p, const blob_quadrature* q, blob_method method, double scale,
                          blob_functionals* out) {
  return guarded([&] {
    need(c, "curve");
    need(out, "out");
    if (method != BLOB_METHOD_OCTANT && method != BLOB_METHOD_FULL) {
      throw blob::Error(blob::ErrorCode::invalid_argument, "unknown method");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) throw blob::Error(blob::ErrorCode::invalid_argument, "scale must be positive");
    auto m = method == BLOB_METHOD_FULL ? blob::FunctionalMethod::full_quadrature
                                        : blob::FunctionalMethod::octant_quadrature;
    auto r = blob::d_value(c->curve, to_pnorm(p), to_spec(q), m, scale);
    *out = {r.area, r.m_value, r.d_value, r.error_estimate};
  });
}

blob_status blob_evaluate_monte_carlo(const blob_curve* c, double p, uint64_t samples, uint64_t seed,
                                      blob_monte_carlo* out) {
  return guarded([&] {
    need(c, "curve");
    need(out, "out");
    auto r = blob::monte_carlo_m(blob::FullBoundary(c->curve), to_pnorm(p), samples, seed);
    double area = blob::area_octant(c->curve);
    double norm = std::pow(area, -2.5);
    *out = {r.estimate, r.standard_error, r.estimate * norm, r.standard_error * norm, r.samples, r.acceptance_rate};
  });
}

blob_status blob_dm_dh(const blob_curve* c, double t, double p, const blob_quadrature* q, double* out) {
  return guarded([&] {
    need(c, "curve");
    need(out, "out");
    *out = blob::dm_dh(c->curve, t, to_pnorm(p), to_spec(q));
  });
}

double blob_da_dh(void) { return blob::da_dh(); }

blob_status blob_residual(const blob_curve* c, double t, double p, blob_residual_form form, const blob_quadrature* q,
                          double* value, double* magnitude) {
  return guarded([&] {
    need(c, "curve");
    need(value, "value");
    auto pn = to_pnorm(p);
    auto spec = to_spec(q);
    blob::ResidualValue r;
    switch (to_form(form)) {
      case blob::ResidualForm::octant:
        r = blob::residual_octant(c->curve, t, pn, spec);
        break;
      case blob::ResidualForm::full:
        r = blob::residual_full(blob::FullBoundary(c->curve), t, pn, spec);
        break;
      case blob::ResidualForm::reduced_p1:
        if (!pn.is(1.0)) throw blob::Error(blob::ErrorCode::invalid_argument, "the reduced residual is the p = 1 condition");
        r = blob::residual_reduced_p1(c->curve, t, spec);
        break;
    }
    *value = r.value;
    if (magnitude) *magnitude = r.magnitude;
  });
}

blob_status blob_residual_profile(const blob_curve* c, double p, int nodes, blob_residual_form form,
                                  const blob_quadrature* q, blob_profile** out) {
  return guarded([&] {
    need(c, "curve");
    need(out, "out");
    *out = new blob_profile{blob::residual_profile(c->curve, to_pnorm(p), nodes, to_form(form), to_spec(q))};
  });
}

size_t blob_profile_size(const blob_profile* prof) { return prof ? prof->profile.t_nodes.size() : 0; }

blob_status blob_profile_node(const blob_profile* prof, size_t i, double* t, double* residual, double* normalized) {
  return guarded([&] {
    need(prof, "profile");
    if (i >= prof->profile.t_nodes.size()) throw blob::Error(blob::ErrorCode::domain, "profile index out of range");
    if (t) *t = prof->profile.t_nodes[i];
    if (residual) *residual = prof->profile.residuals[i];
    if (normalized) *normalized = prof->profile.normalized[i];
  });
}

void blob_profile_norms(const blob_profile* prof, double* sup_norm, double* l2_norm) {
  if (!prof) return;
  if (sup_norm) *sup_norm = prof->profile.sup_norm;
  if (l2_norm) *l2_norm = prof->profile.l2_norm;
}

void blob_profile_free(blob_profile* prof) { delete prof; }

blob_status blob_solve_p2(blob_curve** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(blob::solve_p2());
  });
}

blob_ode_options blob_ode_options_default(void) {
  blob::OdeOptions o;
  return {o.tol, o.grid_size, o.max_sweeps, o.damping};
}

blob_status blob_solve_ode(blob_ode_kind kind, const blob_ode_options* opt, blob_ode_solution** out) {
  return guarded([&] {
    need(out, "out");
    blob::OdeOptions o;
    if (opt) o = {opt->tol, opt->grid_size, opt->max_sweeps, opt->damping};
    if (kind != BLOB_ODE_P1 && kind != BLOB_ODE_PINF) throw blob::Error(blob::ErrorCode::invalid_argument, "unknown ODE");
    auto [curve, sol] = blob::solve_ode(kind == BLOB_ODE_P1 ? blob::OdeKind::p1 : blob::OdeKind::pinf, o);
    *out = new blob_ode_solution{std::move(curve), std::move(sol), o};
  });
}

blob_status blob_ode_curve(const blob_ode_solution* s, blob_curve** out) {
  return guarded([&] {
    need(s, "solution");
    need(out, "out");
    *out = wrap(s->curve);
  });
}

void blob_ode_summary_get(const blob_ode_solution* s, blob_ode_summary* out) {
  if (!s || !out) return;
  const auto& v = s->solution;
  *out = {v.a, v.f1, v.residual_sup, v.hprime1, v.iterations, v.shots, s->options.grid_size, s->options.tol};
}

size_t blob_ode_grid(const blob_ode_solution* s, double* t, double* f, double* h, size_t cap) {
  if (!s) return 0;
  const auto& v = s->solution;
  for (size_t i = 0; i < v.t.size() && i < cap; ++i) {
    if (t) t[i] = v.t[i];
    if (f) f[i] = v.f_values[i];
    if (h) h[i] = v.h_values[i];
  }
  return v.t.size();
}

void blob_ode_free(blob_ode_solution* s) { delete s; }

blob_optimizer_options blob_optimizer_options_default(void) {
  blob::OptimizerOptions o;
  blob_optimizer_options c{};
  c.k = o.k;
  c.init = BLOB_INIT_CIRCLE;
  c.coefficients = nullptr;
  c.perturbation = o.perturbation;
  c.seed = o.seed;
  c.budget = o.budget;
  c.polish_iterations = o.polish_iterations;
  c.restarts = o.restarts;
  c.multistart = o.multistart;
  c.coarse_points = o.coarse_points;
  c.fine_points = o.fine_points;
  c.certificate = o.certificate;
  c.residual_nodes = o.residual_nodes;
  return c;
}

blob_status blob_optimize(double p, const blob_optimizer_options* opt, blob_optimization** out) {
  return guarded([&] {
    need(out, "out");
    blob_optimizer_options c = opt ? *opt : blob_optimizer_options_default();
    blob::OptimizerOptions o;
    o.k = c.k;
    switch (c.init) {
      case BLOB_INIT_CIRCLE: o.init = blob::OptimizerInit::circle; break;
      case BLOB_INIT_P1_SOLUTION: o.init = blob::OptimizerInit::p1_solution; break;
      case BLOB_INIT_COEFFICIENTS:
        need(c.coefficients, "coefficients");
        if (c.k < 1 || c.k > 16) throw blob::Error(blob::ErrorCode::invalid_argument, "k must lie in [2, 16]");
        o.init = blob::OptimizerInit::coefficients;
        o.initial_coefficients.assign(c.coefficients, c.coefficients + c.k);
        break;
      default: throw blob::Error(blob::ErrorCode::invalid_argument, "unknown init");
    }
    o.perturbation = c.perturbation;
    o.seed = c.seed;
    o.budget = c.budget;
    o.polish_iterations = c.polish_iterations;
    o.restarts = c.restarts;
    o.multistart = c.multistart;
    o.coarse_points = c.coarse_points;
    o.fine_points = c.fine_points;
    o.certificate = c.certificate;
    o.residual_nodes = c.residual_nodes;
    *out = new blob_optimization{blob::minimize_d(to_pnorm(p), o)};
  });
}

blob_status blob_optimization_curve(const blob_optimization* o, blob_curve** out) {
  return guarded([&] {
    need(o, "optimization");
    need(out, "out");
    *out = wrap(o->result.curve);
  });
}

void blob_optimization_summary_get(const blob_optimization* o, blob_optimization_summary* out) {
  if (!o || !out) return;
  const auto& t = o->result.trace;
  blob_termination term = BLOB_TERM_MAX_ITER;
  if (t.termination == blob::Termination::converged_d) term = BLOB_TERM_CONVERGED_D;
  if (t.termination == blob::Termination::converged_residual) term = BLOB_TERM_CONVERGED_RESIDUAL;
  *out = {term,
          t.certified ? 1 : 0,
          t.evaluations,
          t.polish_steps,
          t.initial_d,
          t.initial_residual_sup,
          t.final_d,
          t.final_residual_sup,
          t.iterates.size(),
          t.multistart_d.size()};
}

blob_status blob_optimization_iterate(const blob_optimization* o, size_t i, double* d, double* residual_sup) {
  return guarded([&] {
    need(o, "optimization");
    const auto& it = o->result.trace.iterates;
    if (i >= it.size()) throw blob::Error(blob::ErrorCode::domain, "iterate index out of range");
    if (d) *d = it[i].d_value;
    if (residual_sup) *residual_sup = it[i].residual_sup;
  });
}

size_t blob_optimization_coefficients(const blob_optimization* o, double* out, size_t cap) {
  if (!o) return 0;
  const auto& c = o->result.parameters.coefficients();
  for (size_t i = 0; i < c.size() && i < cap && out; ++i) out[i] = c[i];
  return c.size();
}

blob_status blob_optimization_multistart_d(const blob_optimization* o, size_t i, double* d) {
  return guarded([&] {
    need(o, "optimization");
    need(d, "d");
    const auto& m = o->result.trace.multistart_d;
    if (i >= m.size()) throw blob::Error(blob::ErrorCode::domain, "multistart index out of range");
    *d = m[i];
  });
}

void blob_optimization_free(blob_optimization* o) { delete o; }

}  // extern "C"
