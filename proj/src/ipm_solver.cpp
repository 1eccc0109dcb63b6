#include "dctrec/ipm_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace dctrec {

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalReg = 1e-12;
constexpr double kStepFraction = 0.9995;

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

/// min c^T v, A v = b, lo <= v <= up (up may be +inf for slack columns).
struct StandardForm {
  SpMat a;   // m x n
  Vec b, c, lo, up;
  int m = 0, n = 0;
  int num_original = 0;
};

StandardForm to_standard_form(const LpProblem& lp) {
  StandardForm sf;
  sf.num_original = lp.num_vars;
  sf.m = lp.num_rows;

  int num_slacks = 0;
  for (auto s : lp.senses)
    if (s != RowSense::EQ) ++num_slacks;
  sf.n = lp.num_vars + num_slacks;

  sf.b = Eigen::Map<const Vec>(lp.rhs.data(), lp.num_rows);
  sf.c = Vec::Zero(sf.n);
  sf.lo = Vec::Zero(sf.n);
  sf.up = Vec::Zero(sf.n);
  for (int i = 0; i < lp.num_vars; ++i) {
    sf.c[i] = lp.objective[i];
    sf.lo[i] = lp.lower[i];
    sf.up[i] = lp.upper[i];
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(lp.values.size() + num_slacks);
  for (std::size_t t = 0; t < lp.values.size(); ++t)
    trip.emplace_back(lp.row_idx[t], lp.col_idx[t], lp.values[t]);

  int slack = lp.num_vars;
  for (int r = 0; r < lp.num_rows; ++r) {
    if (lp.senses[r] == RowSense::EQ) continue;
    // LE: row + s = rhs with s >= 0;  GE: row - s = rhs with s >= 0.
    trip.emplace_back(r, slack, lp.senses[r] == RowSense::LE ? 1.0 : -1.0);
    sf.lo[slack] = 0.0;
    sf.up[slack] = kInf;
    ++slack;
  }

  sf.a.resize(sf.m, sf.n);
  sf.a.setFromTriplets(trip.begin(), trip.end());
  sf.a.makeCompressed();
  return sf;
}

struct Iterate {
  Vec v, y, zl, zu;    // primal, row duals, bound duals
  Vec xl, xu;          // v - lo and up - v where the bound exists
};

class IpmCore {
 public:
  IpmCore(const StandardForm& sf, const SolverSettings& settings)
      : sf_(sf), opt_(settings), at_(sf.a.transpose()) {
    has_ub_.resize(sf_.n);
    num_bound_terms_ = 0;
    for (int i = 0; i < sf_.n; ++i) {
      has_ub_[i] = std::isfinite(sf_.up[i]);
      num_bound_terms_ += 1 + (has_ub_[i] ? 1 : 0);
    }
    bnorm_ = sf_.b.size() ? sf_.b.cwiseAbs().maxCoeff() : 0.0;
    cnorm_ = sf_.c.size() ? sf_.c.cwiseAbs().maxCoeff() : 0.0;
  }

  SolveStatus run(Iterate& it, SolveStats& stats);

 private:
  struct Direction {
    Vec dv, dy, dzl, dzu;
  };

  void sync_gaps(Iterate& it) const {
    it.xl = it.v - sf_.lo;
    it.xu.resize(sf_.n);
    for (int i = 0; i < sf_.n; ++i)
      it.xu[i] = has_ub_[i] ? sf_.up[i] - it.v[i] : 1.0;
  }

  double mu(const Iterate& it) const {
    double s = it.xl.dot(it.zl);
    for (int i = 0; i < sf_.n; ++i)
      if (has_ub_[i]) s += it.xu[i] * it.zu[i];
    return s / num_bound_terms_;
  }

  Vec primal_residual(const Iterate& it) const { return sf_.b - sf_.a * it.v; }
  Vec dual_residual(const Iterate& it) const {
    return sf_.c - at_ * it.y - it.zl + it.zu;
  }

  double dual_objective(const Iterate& it) const {
    double s = sf_.b.dot(it.y) + sf_.lo.dot(it.zl);
    for (int i = 0; i < sf_.n; ++i)
      if (has_ub_[i]) s -= sf_.up[i] * it.zu[i];
    return s;
  }

  void compute_theta(const Iterate& it);
  bool factorize_theta();
  Vec solve_normal(const Vec& rhs) const;
  Direction newton_direction(const Iterate& it, const Vec& rb, const Vec& rc,
                             const Vec& r5, const Vec& r6) const;
  static double step_to_boundary(const Vec& x, const Vec& dx,
                                 const std::vector<char>* active = nullptr);
  void starting_point(Iterate& it);

  const StandardForm& sf_;
  SolverSettings opt_;
  SpMat at_;
  std::vector<char> has_ub_;
  int num_bound_terms_ = 0;
  double bnorm_ = 0.0, cnorm_ = 0.0;

  Vec theta_inv_;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
  bool analyzed_ = false;
  double diag_reg_ = 0.0;
  std::int64_t factor_nnz_ = 0;
};

void IpmCore::compute_theta(const Iterate& it) {
  theta_inv_.resize(sf_.n);
  for (int i = 0; i < sf_.n; ++i) {
    double theta = it.zl[i] / it.xl[i];
    if (has_ub_[i]) theta += it.zu[i] / it.xu[i];
    theta_inv_[i] = 1.0 / (theta + kPrimalReg);
  }
}

bool IpmCore::factorize_theta() {
  for (int attempt = 0; attempt < 4; ++attempt) {
    SpMat m = sf_.a * theta_inv_.asDiagonal() * at_;
    if (diag_reg_ > 0.0) {
      for (int i = 0; i < sf_.m; ++i) m.coeffRef(i, i) += diag_reg_;
    }
    if (!analyzed_) {
      ldlt_.analyzePattern(m);
      analyzed_ = true;
    }
    ldlt_.factorize(m);
    if (ldlt_.info() == Eigen::Success &&
        ldlt_.vectorD().minCoeff() > 0.0) {
      factor_nnz_ = ldlt_.matrixL().nestedExpression().nonZeros();
      return true;
    }
    diag_reg_ = diag_reg_ == 0.0 ? 1e-10 : diag_reg_ * 100.0;
  }
  return false;
}

Vec IpmCore::solve_normal(const Vec& rhs) const {
  Vec x = ldlt_.solve(rhs);
  // One round of iterative refinement keeps residuals tight as the
  // scaling matrix degenerates near convergence.
  Vec res = rhs - sf_.a * (theta_inv_.asDiagonal() * (at_ * x));
  if (diag_reg_ > 0.0) res -= diag_reg_ * x;
  double rn = res.cwiseAbs().maxCoeff();
  if (rn > 1e-11 * (1.0 + rhs.cwiseAbs().maxCoeff())) x += ldlt_.solve(res);
  return x;
}

IpmCore::Direction IpmCore::newton_direction(const Iterate& it, const Vec& rb,
                                             const Vec& rc, const Vec& r5,
                                             const Vec& r6) const {
  Vec r7 = rc;
  for (int i = 0; i < sf_.n; ++i) {
    r7[i] -= r5[i] / it.xl[i];
    if (has_ub_[i]) r7[i] += r6[i] / it.xu[i];
  }

  Direction d;
  d.dy = solve_normal(rb + sf_.a * (theta_inv_.asDiagonal() * r7));
  d.dv = theta_inv_.asDiagonal() * (at_ * d.dy - r7);
  d.dzl.resize(sf_.n);
  d.dzu = Vec::Zero(sf_.n);
  for (int i = 0; i < sf_.n; ++i) {
    d.dzl[i] = (r5[i] - it.zl[i] * d.dv[i]) / it.xl[i];
    if (has_ub_[i]) d.dzu[i] = (r6[i] + it.zu[i] * d.dv[i]) / it.xu[i];
  }
  return d;
}

double IpmCore::step_to_boundary(const Vec& x, const Vec& dx,
                                 const std::vector<char>* active) {
  double alpha = kInf;
  for (int i = 0; i < x.size(); ++i) {
    if (active && !(*active)[i]) continue;
    if (dx[i] < 0.0) alpha = std::min(alpha, -x[i] / dx[i]);
  }
  return alpha;
}

void IpmCore::starting_point(Iterate& it) {
  // Least-squares primal/dual start clipped into the interior.
  Vec v_ls = at_ * solve_normal(sf_.b);
  it.v.resize(sf_.n);
  for (int i = 0; i < sf_.n; ++i) {
    if (has_ub_[i]) {
      double width = sf_.up[i] - sf_.lo[i];
      double pad = 0.15 * width;
      it.v[i] = std::clamp(v_ls[i], sf_.lo[i] + pad, sf_.up[i] - pad);
    } else {
      double pad = 1.0 + 0.01 * std::abs(v_ls[i]);
      it.v[i] = std::max(v_ls[i], sf_.lo[i] + pad);
    }
  }

  it.y = solve_normal(sf_.a * sf_.c);
  Vec z = sf_.c - at_ * it.y;
  const double zpad = 1.0 + 0.01 * cnorm_;
  it.zl.resize(sf_.n);
  it.zu = Vec::Zero(sf_.n);
  for (int i = 0; i < sf_.n; ++i) {
    if (has_ub_[i]) {
      it.zl[i] = std::max(z[i], 0.0) + zpad;
      it.zu[i] = std::max(-z[i], 0.0) + zpad;
    } else {
      it.zl[i] = std::max(z[i], zpad);
    }
  }
  sync_gaps(it);
}

SolveStatus IpmCore::run(Iterate& it, SolveStats& stats) {
  stats.matrix_nonzeros = sf_.a.nonZeros();

  // Initial factorization with unit scaling doubles as the symbolic
  // analysis; the pattern of A Theta^-1 A^T never changes.
  theta_inv_ = Vec::Ones(sf_.n);
  if (!factorize_theta()) return SolveStatus::NumericalFailure;
  starting_point(it);

  double best_pinf = kInf;
  int stalled = 0;

  for (int iter = 0; iter < opt_.max_iterations; ++iter) {
    Vec rb = primal_residual(it);
    Vec rc = dual_residual(it);
    double mu_now = mu(it);
    double pobj = sf_.c.dot(it.v);
    double dobj = dual_objective(it);

    double pinf = rb.size() ? rb.cwiseAbs().maxCoeff() / (1.0 + bnorm_) : 0.0;
    double dinf = rc.cwiseAbs().maxCoeff() / (1.0 + cnorm_);
    double gap = std::abs(pobj - dobj);

    stats.iterations = iter;
    stats.primal_infeasibility = pinf;
    stats.dual_infeasibility = dinf;
    stats.duality_gap = gap;
    stats.factor_nonzeros = factor_nnz_;

    if (pinf < opt_.tolerance && dinf < opt_.tolerance &&
        gap <= opt_.tolerance * (1.0 + std::abs(pobj)))
      return SolveStatus::Optimal;

    // Divergence of the dual objective with a stuck primal residual is the
    // practical footprint of an infeasible model.
    if (pinf > best_pinf * 0.999) {
      if (++stalled >= 20 && pinf > 1e3 * opt_.tolerance &&
          (dobj > 1e10 * (1.0 + std::abs(pobj)) || mu_now < opt_.tolerance))
        return SolveStatus::Infeasible;
    } else {
      stalled = 0;
      best_pinf = pinf;
    }

    compute_theta(it);
    if (!factorize_theta()) return SolveStatus::NumericalFailure;

    // Predictor: pure Newton step on the complementarity conditions.
    Vec r5(sf_.n), r6 = Vec::Zero(sf_.n);
    for (int i = 0; i < sf_.n; ++i) {
      r5[i] = -it.xl[i] * it.zl[i];
      if (has_ub_[i]) r6[i] = -it.xu[i] * it.zu[i];
    }
    Direction aff = newton_direction(it, rb, rc, r5, r6);

    Vec neg_dv = -aff.dv;
    double ap = std::min({1.0, step_to_boundary(it.xl, aff.dv),
                          step_to_boundary(it.xu, neg_dv, &has_ub_)});
    double ad = std::min({1.0, step_to_boundary(it.zl, aff.dzl),
                          step_to_boundary(it.zu, aff.dzu, &has_ub_)});

    double mu_aff = 0.0;
    for (int i = 0; i < sf_.n; ++i) {
      mu_aff += (it.xl[i] + ap * aff.dv[i]) * (it.zl[i] + ad * aff.dzl[i]);
      if (has_ub_[i])
        mu_aff += (it.xu[i] - ap * aff.dv[i]) * (it.zu[i] + ad * aff.dzu[i]);
    }
    mu_aff /= num_bound_terms_;
    double sigma = std::clamp(std::pow(mu_aff / mu_now, 3.0), 1e-8, 0.999);

    // Corrector folded into a single combined direction (Mehrotra).
    for (int i = 0; i < sf_.n; ++i) {
      r5[i] = sigma * mu_now - it.xl[i] * it.zl[i] - aff.dv[i] * aff.dzl[i];
      if (has_ub_[i])
        r6[i] =
            sigma * mu_now - it.xu[i] * it.zu[i] + aff.dv[i] * aff.dzu[i];
    }
    Direction dir = newton_direction(it, rb, rc, r5, r6);

    neg_dv = -dir.dv;
    ap = std::min(1.0, kStepFraction *
                           std::min(step_to_boundary(it.xl, dir.dv),
                                    step_to_boundary(it.xu, neg_dv, &has_ub_)));
    ad = std::min(1.0, kStepFraction *
                           std::min(step_to_boundary(it.zl, dir.dzl),
                                    step_to_boundary(it.zu, dir.dzu, &has_ub_)));

    it.v += ap * dir.dv;
    it.y += ad * dir.dy;
    it.zl += ad * dir.dzl;
    it.zu += ad * dir.dzu;
    sync_gaps(it);

    if (!it.v.allFinite() || !it.y.allFinite() || !it.zl.allFinite() ||
        !it.zu.allFinite())
      return SolveStatus::NumericalFailure;
  }
  return SolveStatus::IterationLimit;
}

}  // namespace

Solution solve(const LpProblem& problem, const SolverSettings& settings) {
  const auto t0 = std::chrono::steady_clock::now();

  StandardForm sf = to_standard_form(problem);
  // Degenerate fixed variables would break the interior parameterization.
  for (int i = 0; i < sf.n; ++i)
    if (std::isfinite(sf.up[i]) && sf.up[i] - sf.lo[i] < 1e-9)
      sf.up[i] = sf.lo[i] + 1e-9;

  IpmCore core(sf, settings);
  Iterate it;
  Solution sol;
  sol.status = core.run(it, sol.stats);

  sol.values.assign(problem.num_vars, 0.0);
  if (it.v.size() >= problem.num_vars)
    for (int i = 0; i < problem.num_vars; ++i) sol.values[i] = it.v[i];
  sol.objective = 0.0;
  for (int i = 0; i < problem.num_vars; ++i)
    sol.objective += problem.objective[i] * sol.values[i];

  sol.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return sol;
}

double VerificationReport::worst() const {
  return std::max({max_equality_residual, max_inequality_violation,
                   max_bound_violation});
}

VerificationReport verify_solution(const LpProblem& lp, const Solution& sol) {
  VerificationReport rep;
  std::vector<double> activity(lp.num_rows, 0.0);
  for (std::size_t t = 0; t < lp.values.size(); ++t)
    activity[lp.row_idx[t]] += lp.values[t] * sol.values[lp.col_idx[t]];

  for (int r = 0; r < lp.num_rows; ++r) {
    double diff = activity[r] - lp.rhs[r];
    switch (lp.senses[r]) {
      case RowSense::EQ:
        rep.max_equality_residual =
            std::max(rep.max_equality_residual, std::abs(diff));
        break;
      case RowSense::LE:
        rep.max_inequality_violation =
            std::max(rep.max_inequality_violation, diff);
        break;
      case RowSense::GE:
        rep.max_inequality_violation =
            std::max(rep.max_inequality_violation, -diff);
        break;
    }
  }
  for (int c = 0; c < lp.num_vars; ++c) {
    rep.max_bound_violation =
        std::max({rep.max_bound_violation, lp.lower[c] - sol.values[c],
                  sol.values[c] - lp.upper[c]});
    rep.objective_recomputed += lp.objective[c] * sol.values[c];
  }
  return rep;
}

}  // namespace dctrec
