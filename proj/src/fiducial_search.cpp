#include "sicforge/fiducial_search.hpp"

#include "sicforge/sic_verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <thread>

namespace sicforge {

void SearchConfig::validate() const {
  if (dim < 2) {
    throw std::invalid_argument("search: dim must be >= 2");
  }
  if (restarts < 1) {
    throw std::invalid_argument("search: restarts must be >= 1");
  }
  if (max_iters < 1 || polish_iters < 0) {
    throw std::invalid_argument("search: iteration limits must be positive");
  }
  if (!(accept_tol > 0.0) || !(certify_tol > 0.0) || !(step_tol >= 0.0)) {
    throw std::invalid_argument("search: tolerances must be positive");
  }
  if (threads < 1) {
    throw std::invalid_argument("search: threads must be >= 1");
  }
}

namespace {

// All d^2 quartic residuals R(k, l) = Q(k, l) - target, row-major in (k, l).
std::vector<cd> quartic_violations(const ComplexVector& psi) {
  const int n = static_cast<int>(psi.size());
  const Dim d(n);
  std::vector<cd> r(d.squared());
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      r[static_cast<std::size_t>(k * n + l)] = quartic_sum(psi, k, l) - quartic_target(d, k, l);
    }
  }
  return r;
}

ComplexVector tangent_projection(const ComplexVector& psi, const ComplexVector& v) {
  return v - psi.dot(v) * psi;
}

double real_inner(const ComplexVector& a, const ComplexVector& b) {
  return a.dot(b).real();
}

struct DescentOptions {
  int max_iters = 3000;
  double step_tol = 1e-15;
  double armijo = 1e-4;
  int max_backtracks = 60;
  // f below this is numerically zero
  double floor = 1e-30;
};

struct DescentResult {
  ComplexVector psi;
  double value = 0.0;
  int iterations = 0;
};

// Limited-memory quasi-Newton directions on the sphere, curvature pairs
// carried between tangent spaces by projection. Only gradients are used.
// Conjugate gradients crawl along the curved valleys around degenerate
// (quartic) d = 3 minima; the curvature memory gets through them.
DescentResult descend(ComplexVector psi, const DescentOptions& opt, int memory = 8) {
  double f = objective(psi);
  ComplexVector g = tangent_projection(psi, ambient_gradient(psi));
  std::vector<ComplexVector> ss;
  std::vector<ComplexVector> ys;
  int it = 0;
  for (; it < opt.max_iters && f > opt.floor; ++it) {
    if (g.squaredNorm() == 0.0) {
      break;
    }
    // two-loop recursion
    ComplexVector q = g;
    std::vector<double> a(ss.size());
    for (std::size_t i = ss.size(); i-- > 0;) {
      a[i] = real_inner(ss[i], q) / real_inner(ys[i], ss[i]);
      q -= a[i] * ys[i];
    }
    if (!ss.empty()) {
      q *= real_inner(ss.back(), ys.back()) / ys.back().squaredNorm();
    }
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const double b = real_inner(ys[i], q) / real_inner(ys[i], ss[i]);
      q += (a[i] - b) * ss[i];
    }
    ComplexVector p = tangent_projection(psi, -q);
    double slope = real_inner(g, p);
    if (!(slope < 0.0)) {
      ss.clear();
      ys.clear();
      p = -g;
      slope = -g.squaredNorm();
    }
    // The minimum value is 0, so f / |slope| is the linearized root along p.
    // Where f ~ dist^4 the minimizer is four times further out, well past
    // the unit quasi-Newton step.
    double step = std::max(ss.empty() ? std::min(1.0, 4.0 * f / -slope) : 1.0, 4.0 * f / -slope);
    step = std::min(step, 1.0 / p.norm());
    std::optional<ComplexVector> accepted;
    double f_new = f;
    for (int bt = 0; bt < opt.max_backtracks; ++bt) {
      ComplexVector trial = psi + step * p;
      trial.normalize();
      const double f_trial = objective(trial);
      if (f_trial <= f + opt.armijo * step * slope) {
        accepted = std::move(trial);
        f_new = f_trial;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      break;
    }
    const double step_len = step * p.norm();
    const ComplexVector g_new = tangent_projection(*accepted, ambient_gradient(*accepted));
    ComplexVector s = tangent_projection(*accepted, step * p);
    ComplexVector y = g_new - tangent_projection(*accepted, g);
    for (auto& v : ss) {
      v = tangent_projection(*accepted, v);
    }
    for (auto& v : ys) {
      v = tangent_projection(*accepted, v);
    }
    if (real_inner(s, y) > 1e-12 * s.norm() * y.norm()) {
      ss.push_back(std::move(s));
      ys.push_back(std::move(y));
      if (ss.size() > static_cast<std::size_t>(memory)) {
        ss.erase(ss.begin());
        ys.erase(ys.begin());
      }
    }
    psi = std::move(*accepted);
    f = f_new;
    g = g_new;
    if (step_len < opt.step_tol) {
      ++it;
      break;
    }
  }
  return {std::move(psi), f, it};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RestartRun {
  RestartTrace trace;
  ComplexVector psi;
};

RestartRun run_restart(const SearchConfig& config, int index) {
  const StateVector start = random_start(Dim(config.dim), config.seed, index);
  DescentOptions opt;
  opt.max_iters = config.max_iters;
  opt.step_tol = config.step_tol;
  RestartRun run;
  run.trace.index = index;
  run.trace.start_objective = objective(start);
  DescentResult res = descend(start.components(), opt);
  run.trace.final_objective = res.value;
  run.trace.iterations = res.iterations;
  run.trace.accepted = res.value <= config.accept_tol;
  run.psi = std::move(res.psi);
  return run;
}

}  // namespace

double objective(const ComplexVector& psi) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(psi.size() * psi.size()));
  for (const cd& r : quartic_violations(psi)) {
    terms.push_back(std::norm(r));
  }
  return pairwise_sum(terms);
}

ComplexVector ambient_gradient(const ComplexVector& psi) {
  const int n = static_cast<int>(psi.size());
  const std::vector<cd> viol = quartic_violations(psi);
  auto at = [&](int j) { return psi(mod(j, n)); };
  auto cat = [&](int j) { return std::conj(psi(mod(j, n))); };
  ComplexVector grad(n);
  std::vector<cd> terms(static_cast<std::size_t>(n * n));
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const cd r = viol[static_cast<std::size_t>(k * n + l)];
        // dQ/dpsi*_m and d(conj Q)/dpsi*_m
        const cd dq = at(m - k) * cat(m - k + l) * at(m + l) + at(m - l) * cat(m - l + k) * at(m + k);
        const cd dqc = at(m + k) * at(m + l) * cat(m + k + l) + cat(m - k - l) * at(m - l) * at(m - k);
        terms[static_cast<std::size_t>(k * n + l)] = std::conj(r) * dq + r * dqc;
      }
    }
    grad(m) = 2.0 * pairwise_sum(terms);
  }
  return grad;
}

ComplexVector objective_gradient(const StateVector& psi) {
  return tangent_projection(psi.components(), ambient_gradient(psi.components()));
}

StateVector random_start(Dim d, std::uint64_t seed, int index) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(d.value());
  for (int j = 0; j < d.value(); ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(j) = cd(re, im);
  }
  return StateVector::normalized(v);
}

SicCandidate make_candidate(const StateVector& psi, double certify_tol, int restarts_used, int iterations) {
  SicCandidate c{psi, objective(psi), gram_residual(psi), quartic_residual(psi), restarts_used, iterations, false};
  c.certified = c.gram_residual <= certify_tol && c.quartic_residual <= certify_tol;
  return c;
}

SicCandidate polish(const StateVector& psi, int max_iters, double certify_tol) {
  DescentOptions opt;
  opt.max_iters = max_iters;
  opt.step_tol = 0.0;
  opt.max_backtracks = 200;
  DescentResult res = descend(psi.components(), opt);
  // descent is monotone, but keep the input if nothing improved
  if (!(res.value < objective(psi))) {
    return make_candidate(psi, certify_tol, 1, res.iterations);
  }
  return make_candidate(StateVector::normalized(res.psi), certify_tol, 1, res.iterations);
}

SearchOutcome search(const SearchConfig& config) {
  config.validate();
  const int batch = std::max(1, std::min(config.threads, config.restarts));
  std::vector<RestartRun> runs;
  runs.reserve(static_cast<std::size_t>(config.restarts));
  std::optional<std::size_t> hit;

  for (int first = 0; first < config.restarts && !hit; first += batch) {
    const int count = std::min(batch, config.restarts - first);
    std::vector<RestartRun> slot(static_cast<std::size_t>(count));
    if (count == 1) {
      slot[0] = run_restart(config, first);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i) {
        workers.emplace_back([&config, &slot, first, i] { slot[static_cast<std::size_t>(i)] = run_restart(config, first + i); });
      }
    }
    // lowest accepted index wins, matching a serial scan
    for (auto& run : slot) {
      runs.push_back(std::move(run));
      if (runs.back().trace.accepted) {
        hit = runs.size() - 1;
        break;
      }
    }
  }

  std::size_t chosen = 0;
  if (hit) {
    chosen = *hit;
  } else {
    for (std::size_t i = 1; i < runs.size(); ++i) {
      if (runs[i].trace.final_objective < runs[chosen].trace.final_objective) {
        chosen = i;
      }
    }
  }

  SearchOutcome out{make_candidate(StateVector::normalized(runs[chosen].psi), config.certify_tol, 0, 0), {}};
  int iterations = runs[chosen].trace.iterations;
  if (hit && config.polish_iters > 0) {
    const SicCandidate refined = polish(out.best.fiducial, config.polish_iters, config.certify_tol);
    iterations += refined.iterations;
    out.best = refined;
  }
  out.best.restarts_used = static_cast<int>(runs.size());
  out.best.iterations = iterations;
  for (const auto& run : runs) {
    out.restarts.push_back(run.trace);
  }
  return out;
}

}  // namespace sicforge
