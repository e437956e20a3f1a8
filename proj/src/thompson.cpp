#include "lieth/thompson.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace lieth {

std::string to_string(Picture p) {
  return p == Picture::additive ? "additive" : "multiplicative";
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::feasible: return "feasible";
    case Decision::infeasible: return "infeasible";
    default: return "undecided";
  }
}

std::string to_string(CompareVerdict v) {
  switch (v) {
    case CompareVerdict::agree_feasible: return "agree-feasible";
    case CompareVerdict::agree_infeasible: return "agree-infeasible";
    case CompareVerdict::disagree: return "disagree";
    default: return "undecided";
  }
}

CMat leg_matrix(const GroupCatalog& gc, const Eigen::VectorXd& coords) {
  int n = gc.n;
  CMat lam = CMat::Zero(n, n);
  if (gc.split()) {
    if (coords.size() != n) throw UsageError("leg needs one entry per diagonal slot");
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += coords[i];
    if (std::abs(sum) > 1e-9) throw UsageError("leg diagonal must be traceless");
    for (int i = 0; i + 1 < n; ++i)
      if (coords[i] < coords[i + 1] - 1e-12)
        throw UsageError("leg diagonal must be sorted downward");
    for (int i = 0; i < n; ++i) lam(i, i) = coords[i];
    return lam;
  }
  if (coords.size() != gc.q) throw UsageError("leg needs one entry per restricted value");
  for (int i = 0; i < gc.q; ++i) {
    if (coords[i] < -1e-12) throw UsageError("restricted values must be non-negative");
    if (i + 1 < gc.q && coords[i] < coords[i + 1] - 1e-12)
      throw UsageError("restricted values must be sorted downward");
    lam(i, i) = coords[i];
    lam(gc.n - 1 - i, gc.n - 1 - i) = -coords[i];
  }
  return lam;
}

void validate_label(const GroupCatalog& gc, const OrbitLabel& label) {
  if (label.legs.empty()) throw UsageError("orbit label needs at least one leg");
  for (const auto& leg : label.legs) leg_matrix(gc, leg);
}

Eigen::VectorXd invariants_of(const GroupCatalog& gc, const CMat& xi) {
  Eigen::SelfAdjointEigenSolver<CMat> es((xi + xi.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues().reverse();
  if (gc.split()) return ev;
  return ev.head(gc.q);
}

CMat orbit_point(const GroupCatalog& gc, const Eigen::VectorXd& coords, const CMat& k) {
  return k * leg_matrix(gc, coords) * k.adjoint();
}

CMat dressing_orbit_point(const GroupCatalog& gc, const Eigen::VectorXd& coords,
                          const CMat& k) {
  return dressing(k, herm_exp(leg_matrix(gc, coords)));
}

std::pair<bool, double> orbit_membership(const GroupCatalog& gc, const CMat& xi,
                                         const Eigen::VectorXd& coords) {
  if ((xi - xi.adjoint()).norm() > 1e-8 * (1.0 + xi.norm()) ||
      (gc.tau_lie(xi) - xi).norm() > 1e-8 * (1.0 + xi.norm()))
    throw UsageError("point is not in the real symmetric-space slice");
  Eigen::VectorXd inv = invariants_of(gc, xi);
  Eigen::VectorXd want = invariants_of(gc, leg_matrix(gc, coords));
  double dev = (inv - want).lpNorm<Eigen::Infinity>();
  return {dev <= 1e-8, dev};
}

std::pair<bool, double> dressing_membership(const GroupCatalog& gc, const CMat& b,
                                            const Eigen::VectorXd& coords) {
  if ((sigma_an(gc, b) - b).norm() > 1e-7 * (1.0 + b.norm()))
    throw UsageError("point is not in the real Iwasawa subgroup");
  return orbit_membership(gc, E_inverse(b), coords);
}

double additive_residual(const GroupCatalog& gc, const OrbitLabel& label,
                         const std::vector<CMat>& ks) {
  CMat sum = CMat::Zero(gc.n, gc.n);
  for (int j = 0; j < label.l(); ++j)
    sum += ks[j] * leg_matrix(gc, label.legs[j]) * ks[j].adjoint();
  return sum.norm();
}

double multiplicative_residual_bs(const GroupCatalog& gc, const std::vector<CMat>& bs) {
  CMat prod = CMat::Identity(gc.n, gc.n);
  for (const CMat& b : bs) prod = prod * b;
  return E_inverse(sl_normalize(prod)).norm();
}

double multiplicative_residual(const GroupCatalog& gc, const OrbitLabel& label,
                               const std::vector<CMat>& ks) {
  std::vector<CMat> bs;
  bs.reserve(label.l());
  for (int j = 0; j < label.l(); ++j)
    bs.push_back(dressing_orbit_point(gc, label.legs[j], ks[j]));
  return multiplicative_residual_bs(gc, bs);
}

namespace {

int thread_budget() {
  const char* env = std::getenv("THOMPSON_LIE_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return std::clamp(v, 1, 64);
}

struct Objective {
  const GroupCatalog& gc;
  const OrbitLabel& label;
  Picture picture;
  std::vector<CMat> centers;    // current base points in K0
  std::vector<CMat> lams;       // leg matrices
  std::vector<CMat> exp_legs;   // exp(lambda_j), multiplicative only

  // |E^{-1}(sl_normalize(prod))| from the spectrum of prod prod^dagger:
  // normalizing the determinant centers the log spectrum, so the matrix log
  // never needs to be formed.
  double mult_residual_of(const CMat& prod) const {
    Eigen::SelfAdjointEigenSolver<CMat> es(prod * prod.adjoint(),
                                           Eigen::EigenvaluesOnly);
    Eigen::ArrayXd lg = 0.5 * es.eigenvalues().array().log();
    return std::sqrt((lg - lg.mean()).square().sum());
  }

  double eval(const Eigen::VectorXd& eta) const {
    int m = static_cast<int>(gc.k0_basis.size());
    if (picture == Picture::additive) {
      CMat sum = CMat::Zero(gc.n, gc.n);
      for (int j = 0; j < label.l(); ++j) {
        CMat k = centers[j] * unitary_exp(span(eta, j, m));
        sum += k * lams[j] * k.adjoint();
      }
      return sum.norm();
    }
    CMat prod = CMat::Identity(gc.n, gc.n);
    for (int j = 0; j < label.l(); ++j) {
      CMat k = centers[j] * unitary_exp(span(eta, j, m));
      prod = prod * dressing(k, exp_legs[j]);
    }
    return mult_residual_of(prod);
  }

  // Central-difference gradient at the current centers.  Only one leg moves
  // per probe, so the untouched factors are cached, and the probe steps
  // exp(+-h b_i) are the precomputed constants in exp_probe (their adjoints
  // give the minus side exactly).
  void gradient(const std::vector<CMat>& exp_probe, double fd_step,
                Eigen::VectorXd& grad) const {
    int m = static_cast<int>(gc.k0_basis.size());
    int l = label.l();
    if (picture == Picture::additive) {
      std::vector<CMat> terms(l);
      CMat total = CMat::Zero(gc.n, gc.n);
      for (int j = 0; j < l; ++j) {
        terms[j] = centers[j] * lams[j] * centers[j].adjoint();
        total += terms[j];
      }
      for (int j = 0; j < l; ++j) {
        CMat rest = total - terms[j];
        for (int i = 0; i < m; ++i) {
          CMat kp = centers[j] * exp_probe[i];
          CMat km = centers[j] * exp_probe[i].adjoint();
          double fp = (rest + kp * lams[j] * kp.adjoint()).norm();
          double fm = (rest + km * lams[j] * km.adjoint()).norm();
          grad[j * m + i] = (fp - fm) / (2 * fd_step);
        }
      }
      return;
    }
    std::vector<CMat> factors(l), prefix(l), suffix(l);
    for (int j = 0; j < l; ++j) factors[j] = dressing(centers[j], exp_legs[j]);
    prefix[0] = CMat::Identity(gc.n, gc.n);
    for (int j = 1; j < l; ++j) prefix[j] = prefix[j - 1] * factors[j - 1];
    suffix[l - 1] = CMat::Identity(gc.n, gc.n);
    for (int j = l - 2; j >= 0; --j) suffix[j] = factors[j + 1] * suffix[j + 1];
    for (int j = 0; j < l; ++j)
      for (int i = 0; i < m; ++i) {
        CMat kp = centers[j] * exp_probe[i];
        CMat km = centers[j] * exp_probe[i].adjoint();
        double fp = mult_residual_of(prefix[j] * dressing(kp, exp_legs[j]) * suffix[j]);
        double fm = mult_residual_of(prefix[j] * dressing(km, exp_legs[j]) * suffix[j]);
        grad[j * m + i] = (fp - fm) / (2 * fd_step);
      }
  }

  CMat span(const Eigen::VectorXd& eta, int leg, int m) const {
    CMat x = CMat::Zero(gc.n, gc.n);
    for (int i = 0; i < m; ++i) x += eta[leg * m + i] * gc.k0_basis[i];
    return x;
  }

  void recenter(const Eigen::VectorXd& eta) {
    int m = static_cast<int>(gc.k0_basis.size());
    for (int j = 0; j < label.l(); ++j)
      centers[j] = centers[j] * unitary_exp(span(eta, j, m));
  }
};

RestartTrace run_restart(const GroupCatalog& gc, const OrbitLabel& label, Picture picture,
                         const FeasibilityConfig& cfg, int index,
                         std::vector<CMat>* witness) {
  RestartTrace tr;
  tr.index = index;
  tr.seed = cfg.seed + static_cast<uint64_t>(index);
  Rng rng(tr.seed);

  Objective obj{gc, label, picture, {}, {}, {}};
  for (int j = 0; j < label.l(); ++j) {
    obj.centers.push_back(random_k0(gc, rng, cfg.init_scale));
    obj.lams.push_back(leg_matrix(gc, label.legs[j]));
    if (picture == Picture::multiplicative)
      obj.exp_legs.push_back(herm_exp(obj.lams.back()));
  }

  int dim = label.l() * static_cast<int>(gc.k0_basis.size());
  std::vector<CMat> exp_probe;
  exp_probe.reserve(gc.k0_basis.size());
  for (const CMat& b : gc.k0_basis) exp_probe.push_back(unitary_exp(cfg.fd_step * b));
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim);
  double f = 0;
  double step = 0.25;
  Eigen::VectorXd prev_grad(dim), prev_move(dim);
  bool have_prev = false;
  std::vector<double> recent;  // non-monotone line-search reference window
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<CMat> best_centers = obj.centers;
  // Plateau certificate: BB keeps accepting sub-roundoff improvements on
  // flat floors (the Armijo threshold scales with |grad|^2), so a long
  // window without measurable descent, well away from the feasibility
  // band, counts as a converged local floor.
  constexpr int kStallWindow = 250;
  constexpr double kStallImprovement = 1e-5;
  double window_best = std::numeric_limits<double>::infinity();
  int since_improve = 0;
  try {
    f = obj.eval(zero);
    best_f = f;
    window_best = f;
    recent.assign(1, f);
    for (tr.iters = 0; tr.iters < cfg.max_iters; ++tr.iters) {
      if (f <= 0.5 * cfg.eps_feas) {
        tr.converged = true;
        break;
      }
      Eigen::VectorXd grad(dim);
      obj.gradient(exp_probe, cfg.fd_step, grad);
      tr.grad_norm = grad.norm();
      if (tr.grad_norm <= cfg.grad_tol) {
        tr.converged = true;
        break;
      }
      // Barzilai-Borwein trial step (charts at consecutive centers agree to
      // first order, which is all the quotient needs), safeguarded by
      // backtracking against the worst recent value so the natural BB step
      // length survives ill conditioned valleys.
      double s = step;
      if (have_prev) {
        Eigen::VectorXd y = grad - prev_grad;
        double sy = prev_move.dot(y);
        if (sy > 1e-18) s = std::clamp(prev_move.squaredNorm() / sy, 1e-8, 10.0);
      }
      // Near the zero cone the objective is conical and only monotone steps
      // make reliable progress; elsewhere the windowed reference lets the
      // BB step survive ill conditioned valleys.
      double f_ref = f > 1e-4 ? *std::max_element(recent.begin(), recent.end()) : f;
      bool accepted = false;
      while (s > 1e-14) {
        Eigen::VectorXd trial = -s * grad;
        double ft = obj.eval(trial);
        if (std::isfinite(ft) && ft <= f_ref - 1e-4 * s * tr.grad_norm * tr.grad_norm) {
          obj.recenter(trial);
          prev_move = trial;
          prev_grad = grad;
          have_prev = true;
          f = ft;
          if (f < best_f) {
            best_f = f;
            best_centers = obj.centers;
          }
          recent.push_back(f);
          if (recent.size() > 8) recent.erase(recent.begin());
          step = std::min(s * 2.0, 4.0);
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) {
        tr.converged = true;  // no descent direction at line-search resolution
        break;
      }
      if (best_f < window_best - std::max(1e-14, kStallImprovement * window_best)) {
        window_best = best_f;
        since_improve = 0;
      } else if (++since_improve >= kStallWindow && best_f > 10 * cfg.eps_feas) {
        tr.converged = true;
        break;
      }
    }
    tr.residual = best_f;
    if (!std::isfinite(best_f)) {
      tr.diverged = true;
      tr.converged = false;
      tr.residual = std::numeric_limits<double>::infinity();
    }
  } catch (const std::exception&) {
    tr.diverged = true;
    tr.converged = false;
    tr.residual = std::numeric_limits<double>::infinity();
  }
  if (witness) *witness = best_centers;
  return tr;
}

}  // namespace

FeasibilityReport feasibility_search(const GroupCatalog& gc, const OrbitLabel& label,
                                     Picture picture, const FeasibilityConfig& cfg) {
  if (!(cfg.eps_feas < cfg.eps_infeas)) throw UsageError("decision thresholds are out of order");
  if (cfg.restarts < 1 || cfg.max_iters < 1) throw UsageError("optimizer budget must be positive");
  validate_label(gc, label);

  auto t0 = std::chrono::steady_clock::now();
  FeasibilityReport rep;
  rep.seed = cfg.seed;

  std::vector<RestartTrace> traces(cfg.restarts);
  std::vector<std::vector<CMat>> witnesses(cfg.restarts);
  std::vector<char> ran(cfg.restarts, 0);
  std::atomic<int> next{0};
  std::atomic<int> stop_after{cfg.restarts};

  int threads = std::min(thread_budget(), cfg.restarts);
  auto worker = [&]() {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= cfg.restarts || i >= stop_after.load()) return;
      traces[i] = run_restart(gc, label, picture, cfg, i, &witnesses[i]);
      ran[i] = 1;
      if (traces[i].residual <= cfg.eps_feas) {
        int cur = stop_after.load();
        while (i < cur && !stop_after.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // The earliest restart reaching eps_feas truncates the report, making it
  // independent of how many later restarts ran speculatively.
  int cutoff = cfg.restarts - 1;
  for (int i = 0; i < cfg.restarts; ++i)
    if (ran[i] && traces[i].residual <= cfg.eps_feas) {
      cutoff = i;
      break;
    }
  for (int i = 0; i <= cutoff; ++i)
    if (ran[i]) rep.trace.push_back(traces[i]);

  int best = -1;
  for (const RestartTrace& tr : rep.trace) {
    if (tr.diverged) rep.divergence = true;
    if (best < 0 || tr.residual < rep.trace[best].residual) best = tr.index;
  }
  if (best >= 0) {
    rep.best_restart = best;
    rep.best_residual = rep.trace[best].residual;
  }

  bool complete = static_cast<int>(rep.trace.size()) == cfg.restarts;
  bool any_converged = false;
  for (const RestartTrace& tr : rep.trace)
    if (tr.converged) any_converged = true;

  if (best >= 0 && rep.best_residual <= cfg.eps_feas) {
    rep.decision = Decision::feasible;
    rep.witness = witnesses[best];
    rep.best_residual =
        picture == Picture::additive
            ? additive_residual(gc, label, rep.witness)
            : multiplicative_residual(gc, label, rep.witness);
  } else if (complete && any_converged && !rep.divergence &&
             rep.best_residual >= cfg.eps_infeas) {
    // Every restart ended at or above the infeasibility band and at least
    // one certified a converged local floor there.
    rep.decision = Decision::infeasible;
  } else {
    rep.decision = Decision::undecided;
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

CompareReport thompson_compare(const GroupCatalog& gc, const OrbitLabel& label,
                               const FeasibilityConfig& cfg) {
  CompareReport out;
  out.additive = feasibility_search(gc, label, Picture::additive, cfg);
  out.multiplicative = feasibility_search(gc, label, Picture::multiplicative, cfg);
  Decision a = out.additive.decision;
  Decision m = out.multiplicative.decision;
  if (a == Decision::feasible && m == Decision::feasible)
    out.verdict = CompareVerdict::agree_feasible;
  else if (a == Decision::infeasible && m == Decision::infeasible)
    out.verdict = CompareVerdict::agree_infeasible;
  else if ((a == Decision::feasible && m == Decision::infeasible) ||
           (a == Decision::infeasible && m == Decision::feasible))
    out.verdict = CompareVerdict::disagree;
  else
    out.verdict = CompareVerdict::undecided;
  return out;
}

double rank1_margin(const GroupCatalog& gc, const OrbitLabel& label) {
  if (gc.restricted_rank != 1) throw UsageError("closed-form rule needs restricted rank one");
  validate_label(gc, label);
  double sum = 0, top = 0;
  for (const auto& leg : label.legs) {
    double r = leg_matrix(gc, leg).norm();
    sum += r;
    top = std::max(top, r);
  }
  return sum - 2 * top;
}

Decision rank1_oracle(const GroupCatalog& gc, const OrbitLabel& label) {
  return rank1_margin(gc, label) >= 0 ? Decision::feasible : Decision::infeasible;
}

std::vector<CMat> stabilizer_basis(const GroupCatalog& gc, const CMat& lambda) {
  int n = gc.n;
  int m = static_cast<int>(gc.k0_basis.size());
  Eigen::MatrixXd sys(2 * n * n, m);
  for (int c = 0; c < m; ++c) {
    CMat br = gc.k0_basis[c] * lambda - lambda * gc.k0_basis[c];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        sys(2 * (i * n + j), c) = br(i, j).real();
        sys(2 * (i * n + j) + 1, c) = br(i, j).imag();
      }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  lu.setThreshold(1e-9);
  std::vector<CMat> out;
  if (lu.dimensionOfKernel() == 0) return out;
  Eigen::MatrixXd ker = lu.kernel();
  for (int c = 0; c < ker.cols(); ++c) {
    CMat x = CMat::Zero(n, n);
    for (int r = 0; r < m; ++r) x += ker(r, c) * gc.k0_basis[r];
    if (x.norm() > 1e-12) x /= x.norm();
    out.push_back(x);
  }
  return out;
}

}  // namespace lieth
