#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include <gsl/gsl_multimin.h>

#include "reflectron/errors.hpp"
#include "reflectron/repthy.hpp"

namespace reflectron {

bool GTPattern::interlaces() const {
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const auto& up = rows[k];
    const auto& low = rows[k + 1];
    if (low.size() + 1 != up.size()) return false;
    for (std::size_t i = 0; i < low.size(); ++i)
      if (!(up[i] >= low[i] && low[i] >= up[i + 1])) return false;
  }
  return true;
}

std::vector<int> GTPattern::weight() const {
  const std::size_t d = rows.size();
  std::vector<int> w(d);
  for (std::size_t i = 1; i <= d; ++i) {
    const auto& row = rows[d - i];
    const int here = std::accumulate(row.begin(), row.end(), 0);
    int below = 0;
    if (i > 1) below = std::accumulate(rows[d - i + 1].begin(), rows[d - i + 1].end(), 0);
    w[i - 1] = here - below;
  }
  return w;
}

namespace {

void extend_patterns(std::vector<std::vector<int>>& rows, std::vector<GTPattern>& out) {
  const std::vector<int> up = rows.back();
  if (up.size() == 1) {
    out.push_back(GTPattern{rows});
    return;
  }
  std::vector<int> low(up.size() - 1);
  // Odometer over low[i] in [up[i+1], up[i]].
  for (std::size_t i = 0; i < low.size(); ++i) low[i] = up[i + 1];
  while (true) {
    rows.push_back(low);
    extend_patterns(rows, out);
    rows.pop_back();
    std::size_t i = low.size();
    while (i > 0) {
      --i;
      if (low[i] < up[i]) {
        ++low[i];
        for (std::size_t j = i + 1; j < low.size(); ++j) low[j] = up[j + 1];
        break;
      }
      if (i == 0) return;
    }
  }
}

std::vector<int> padded(const std::vector<int>& lambda, int d) {
  if (static_cast<int>(lambda.size()) > d) {
    for (std::size_t i = d; i < lambda.size(); ++i)
      if (lambda[i] != 0) throw DomainError("partition has more than d rows");
  }
  std::vector<int> out(d, 0);
  for (std::size_t i = 0; i < lambda.size() && static_cast<int>(i) < d; ++i) out[i] = lambda[i];
  for (int i = 0; i + 1 < d; ++i)
    if (out[i] < out[i + 1] || out[i + 1] < 0) throw DomainError("not a partition");
  return out;
}

}  // namespace

std::vector<GTPattern> gt_patterns(const std::vector<int>& highest_weight) {
  if (highest_weight.empty()) throw DomainError("empty highest weight");
  std::vector<std::vector<int>> rows{highest_weight};
  std::vector<GTPattern> out;
  extend_patterns(rows, out);
  return out;
}

std::vector<std::vector<int>> partitions(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(padded(cur, d));
      return;
    }
    if (static_cast<int>(cur.size()) == d) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

long long weyl_dimension(const std::vector<int>& lambda, int d) {
  const auto l = padded(lambda, d);
  double num = 1.0, den = 1.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      num *= l[i] - l[j] + j - i;
      den *= j - i;
    }
  return std::llround(num / den);
}

IrrepBlock young_block(const std::vector<int>& lambda_in, int d) {
  const auto lambda = padded(lambda_in, d);
  const int n = std::accumulate(lambda.begin(), lambda.end(), 0);
  if (n < 1) throw DomainError("young_block needs n >= 1");
  // Row-reading standard tableau: row and column of every position.
  std::vector<int> row_of(n), col_of(n);
  for (int r = 0, pos = 0; r < d; ++r)
    for (int c = 0; c < lambda[r]; ++c, ++pos) {
      row_of[pos] = r;
      col_of[pos] = c;
    }
  const std::size_t dim = tensor_dim(d, n);
  Eigen::MatrixXd row_sym = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd col_anti = Eigen::MatrixXd::Zero(dim, dim);
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool keeps_rows = true, keeps_cols = true;
    for (int t = 0; t < n; ++t) {
      keeps_rows = keeps_rows && row_of[perm[t]] == row_of[t];
      keeps_cols = keeps_cols && col_of[perm[t]] == col_of[t];
    }
    if (!keeps_rows && !keeps_cols) continue;
    const Eigen::MatrixXd p = permutation_operator(perm, d).entries().real();
    if (keeps_rows) row_sym += p;
    if (keeps_cols) {
      int inversions = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (perm[a] > perm[b]) ++inversions;
      col_anti += (inversions % 2 == 0 ? 1.0 : -1.0) * p;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  const Eigen::MatrixXd young = col_anti * row_sym;

  IrrepBlock block;
  block.lambda = lambda;
  const auto patterns = gt_patterns(lambda);
  std::map<std::vector<int>, std::vector<GTPattern>> by_weight;
  for (const auto& p : patterns) by_weight[p.weight()].push_back(p);

  std::vector<Eigen::VectorXd> columns;
  for (auto it = by_weight.rbegin(); it != by_weight.rend(); ++it) {
    const auto& [w, labels] = *it;
    std::vector<Eigen::Index> idx;
    for (std::size_t b = 0; b < dim; ++b) {
      std::vector<int> count(d, 0);
      for (std::size_t v = b, s = 0; s < static_cast<std::size_t>(n); ++s, v /= d) ++count[v % d];
      if (count == w) idx.push_back(static_cast<Eigen::Index>(b));
    }
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = young.col(idx[c]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * std::max(1.0, sv(0))) ++rank;
    if (rank != labels.size())
      throw ConsistencyError("Young symmetrizer range does not match the GT weight multiplicity");
    for (std::size_t i = 0; i < rank; ++i) {
      Eigen::VectorXd v = svd.matrixU().col(static_cast<Eigen::Index>(i));
      for (Eigen::Index k = 0; k < v.size(); ++k)
        if (std::abs(v(k)) > 1e-12) {
          if (v(k) < 0) v = -v;
          break;
        }
      columns.push_back(v);
      block.labels.push_back(labels[i]);
    }
  }
  block.basis = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c)
    block.basis.col(static_cast<Eigen::Index>(c)) = columns[c].cast<cplx>();
  return block;
}

SpinBlock spin_block(int n, int two_j) {
  const auto lambda = spin_partition(n, two_j);
  const IrrepBlock young = young_block(lambda, 2);
  // The highest-weight vector comes first (largest count of |0>).
  Vector v = young.basis.col(0);
  SpinBlock out;
  out.two_j = two_j;
  const std::size_t dim = tensor_dim(2, n);
  out.basis = Matrix::Zero(static_cast<Eigen::Index>(dim), two_j + 1);
  for (int k = 0, two_m = two_j; two_m >= -two_j; ++k, two_m -= 2) {
    out.basis.col(k) = v;
    out.labels.push_back({two_j, two_m});
    if (two_m == -two_j) break;
    Vector lowered = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b)
      for (int s = 0; s < n; ++s) {
        const std::size_t bit = std::size_t{1} << (n - 1 - s);
        if ((b & bit) == 0) lowered(static_cast<Eigen::Index>(b | bit)) += v(static_cast<Eigen::Index>(b));
      }
    const double j = two_j / 2.0, m = two_m / 2.0;
    v = lowered / std::sqrt((j + m) * (j - m + 1.0));
  }
  return out;
}

namespace {

Vector probe_from_blocks(const std::vector<Matrix>& blocks, const std::vector<double>& q) {
  Vector out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Matrix& b = blocks[i];
    if (out.size() == 0) out = Vector::Zero(b.rows() * b.rows());
    if (q[i] <= 0.0) continue;
    const double w = std::sqrt(q[i] / static_cast<double>(b.cols()));
    for (Eigen::Index l = 0; l < b.cols(); ++l)
      out += w * kron(Vector(b.col(l)), Vector(b.col(l).conjugate()));
  }
  return out;
}

}  // namespace

Vector build_probe(const ProbeSpec& spec_in) {
  const ProbeSpec spec = normalized_probe(spec_in);
  std::vector<Matrix> blocks;
  for (const auto& lam : spec.lambdas) blocks.push_back(young_block(lam, spec.d).basis);
  return probe_from_blocks(blocks, spec.q);
}

Vector build_probe_d2(int n, const ProbeSpec& spec_in) {
  if (spec_in.d != 2 || spec_in.n != n) throw DomainError("probe spec is not for d=2 and this n");
  const ProbeSpec spec = normalized_probe(spec_in);
  std::vector<Matrix> blocks;
  for (const auto& lam : spec.lambdas) {
    const auto l = padded(lam, 2);
    blocks.push_back(spin_block(n, l[0] - l[1]).basis);
  }
  return probe_from_blocks(blocks, spec.q);
}

double entropy_target(int n, int d) {
  if (d == 2) return std::log2(static_cast<double>(sym_dim(n, 3)));
  return 2.0 * std::log2(static_cast<double>(sym_dim(n, d)));
}

EntropyReport ensemble_entropy(int n, int d, const Vector& probe) {
  const auto basis = commutant_basis(n, d);
  if (static_cast<std::size_t>(probe.size()) != basis->dim()) throw DomainError("probe dimension mismatch");
  std::size_t half = 1;
  for (int i = 0; i < n; ++i) half *= d;
  Vector chi = probe;
  for (std::size_t idx = 0; idx < basis->dim(); ++idx) {
    int flips = 0;
    for (std::size_t v = idx / half, s = 0; s < static_cast<std::size_t>(n); ++s, v /= d)
      if (static_cast<int>(v % d) == d - 1) ++flips;
    if (flips % 2) chi(static_cast<Eigen::Index>(idx)) = -chi(static_cast<Eigen::Index>(idx));
  }
  const Matrix rho = twirl_pure(chi, *basis);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  EntropyReport out;
  out.eigenvalues = es.eigenvalues();
  out.entropy = 0.0;
  out.rank = 0;
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    const double l = out.eigenvalues(i);
    if (l > 1e-10) ++out.rank;
    if (l > 1e-12) out.entropy -= l * std::log2(l);
  }
  return out;
}

namespace {

struct Objective {
  int n;
  int d;
  const std::vector<Matrix>* blocks;
  int evaluations = 0;
};

std::vector<double> simplex_point(const gsl_vector* x) {
  std::vector<double> q(x->size + 1);
  double rest = 1.0;
  for (std::size_t i = 0; i < x->size; ++i) {
    q[i] = gsl_vector_get(x, i);
    rest -= q[i];
  }
  q.back() = rest;
  return q;
}

double negative_entropy(const gsl_vector* x, void* params) {
  auto* obj = static_cast<Objective*>(params);
  const auto q = simplex_point(x);
  double barrier = 0.0;
  for (double v : q) {
    if (v <= 0.0) return 1e10;
    barrier -= std::log(v);
  }
  ++obj->evaluations;
  const double s = ensemble_entropy(obj->n, obj->d, probe_from_blocks(*obj->blocks, q)).entropy;
  constexpr double mu = 1e-9;
  return -s + mu * barrier;
}

}  // namespace

EntropyMaximum maximize_entropy_over_q(int n, int d, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw DomainError("at least one restart is required");
  const auto lambdas = partitions(n, d);
  std::vector<Matrix> blocks;
  for (const auto& lam : lambdas) blocks.push_back(young_block(lam, d).basis);
  const std::size_t m = lambdas.size();

  EntropyMaximum best;
  best.spec = ProbeSpec{n, d, lambdas, std::vector<double>(m, 1.0 / m)};
  best.target = entropy_target(n, d);
  best.evaluations = 0;
  best.entropy = -1.0;

  if (m == 1) {
    best.spec.q = {1.0};
  } else {
    Objective obj{n, d, &blocks};
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    const std::size_t dims = m - 1;
    gsl_multimin_function fn{&negative_entropy, dims, &obj};
    gsl_vector* x = gsl_vector_alloc(dims);
    gsl_vector* step = gsl_vector_alloc(dims);
    gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dims);
    double best_value = 1e300;
    for (int r = 0; r < restarts; ++r) {
      std::vector<double> start(m);
      if (r == 0) {
        std::fill(start.begin(), start.end(), 1.0 / m);
      } else {
        double total = 0.0;
        for (auto& v : start) total += (v = gamma(rng));
        for (auto& v : start) v /= total;
      }
      for (std::size_t i = 0; i < dims; ++i) {
        gsl_vector_set(x, i, start[i]);
        gsl_vector_set(step, i, 0.25 * std::min(start[i], start.back()));
      }
      gsl_multimin_fminimizer_set(solver, &fn, x, step);
      for (int it = 0; it < 2000; ++it) {
        if (gsl_multimin_fminimizer_iterate(solver)) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), 1e-10) == GSL_SUCCESS) break;
      }
      if (solver->fval < best_value) {
        best_value = solver->fval;
        best.spec.q = simplex_point(solver->x);
      }
    }
    gsl_multimin_fminimizer_free(solver);
    gsl_vector_free(step);
    gsl_vector_free(x);
    best.evaluations = obj.evaluations;
  }
  const auto report = ensemble_entropy(n, d, probe_from_blocks(blocks, best.spec.q));
  best.entropy = report.entropy;
  best.rank = report.rank;
  best.below_target = best.entropy < best.target * (1.0 - 1e-4);
  return best;
}

}  // namespace reflectron
