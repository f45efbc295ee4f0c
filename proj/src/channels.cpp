#include "reflectron/channels.hpp"

#include <cmath>

#include "reflectron/errors.hpp"
#include "reflectron/kernels.hpp"

namespace reflectron {

void require_normalized(const Vector& psi) {
  if (psi.size() < 2) throw DomainError("state dimension must be at least 2");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw DomainError("state is not normalized");
}

namespace {

void require_square(const Matrix& x, Eigen::Index d) {
  if (x.rows() != d || x.cols() != d) throw DomainError("operator dimension mismatch");
}

void require_program_isometric(const CyclicElement& e) {
  if (!is_program_isometric(e))
    throw DomainError("cyclic element does not act isometrically on the program inputs");
}

}  // namespace

Matrix rotation_unitary(const Vector& psi, double alpha) {
  require_normalized(psi);
  const auto d = psi.size();
  return Matrix::Identity(d, d) + (std::polar(1.0, alpha) - 1.0) * psi * psi.adjoint();
}

Matrix rotation_channel(const Vector& psi, double alpha, const Matrix& x) {
  require_square(x, psi.size());
  const Matrix r = rotation_unitary(psi, alpha);
  return r * x * r.adjoint();
}

Matrix dense_reflection_channel(const CyclicElement& e, const Vector& psi, const Matrix& x) {
  require_normalized(psi);
  require_program_isometric(e);
  const int d = static_cast<int>(psi.size());
  require_square(x, d);
  const int n = e.copies();
  const std::size_t total = tensor_dim(d, n + 1);
  const auto block = static_cast<Eigen::Index>(total / d);
  const Vector program = tensor_power(psi, n);

  std::vector<Vector> w(d);
  for (int a = 0; a < d; ++a) {
    Vector in = Vector::Zero(static_cast<Eigen::Index>(total));
    in.segment(a * block, block) = program;
    w[a] = apply_element(e, d, in);
  }
  Matrix out = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (x(a, b) == 0.0) continue;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          out(i, j) += x(a, b) * kernels::conj_dot(w[b].data() + j * block,
                                                    w[a].data() + i * block,
                                                    static_cast<std::size_t>(block));
    }
  return out;
}

EffectiveChannel::EffectiveChannel(Vector psi, cplx a_x, cplx a_px, cplx a_xp, cplx a_tr,
                                   cplx a_trp)
    : psi_(std::move(psi)), a_x_(a_x), a_px_(a_px), a_xp_(a_xp), a_tr_(a_tr), a_trp_(a_trp) {
  require_normalized(psi_);
}

Matrix EffectiveChannel::apply(const Matrix& x) const {
  require_square(x, psi_.size());
  const Eigen::RowVectorXcd px_row = psi_.adjoint() * x;
  const Vector xp_col = x * psi_;
  const cplx tr_px = (psi_.adjoint() * xp_col)(0);
  Matrix out = a_x_ * x;
  out += a_px_ * psi_ * px_row;
  out += a_xp_ * xp_col * psi_.adjoint();
  out += (a_tr_ * x.trace() + a_trp_ * tr_px) * psi_ * psi_.adjoint();
  return out;
}

EffectiveChannel effective_channel(const CyclicElement& e, const Vector& psi) {
  require_normalized(psi);
  require_program_isometric(e);
  const cplx c0 = e[0];
  cplx ct0 = 0.0;
  double q = 0.0;
  for (int l = 0; l <= e.copies(); ++l) {
    ct0 += e[l];
    if (l > 0) q += std::norm(e[l]);
  }
  const cplx s = ct0 - c0;
  return EffectiveChannel(psi, std::norm(c0), std::conj(c0) * s, c0 * std::conj(s), q,
                          std::norm(s) - q);
}

nlohmann::json to_json(const EffectiveChannel& ch) {
  nlohmann::json psi = nlohmann::json::array();
  for (Eigen::Index i = 0; i < ch.psi().size(); ++i) psi.push_back(complex_to_json(ch.psi()(i)));
  return nlohmann::json{{"d", ch.dim()},
                        {"psi", psi},
                        {"a_X", complex_to_json(ch.a_x())},
                        {"a_PX", complex_to_json(ch.a_px())},
                        {"a_XP", complex_to_json(ch.a_xp())},
                        {"a_tr", complex_to_json(ch.a_tr())},
                        {"a_trP", complex_to_json(ch.a_trp())}};
}

EffectiveChannel effective_channel_from_json(const nlohmann::json& j) {
  const auto& arr = j.at("psi");
  Vector psi(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) psi(static_cast<Eigen::Index>(i)) = complex_from_json(arr[i]);
  if (j.contains("d") && j.at("d").get<int>() != psi.size()) throw DomainError("d does not match psi");
  return EffectiveChannel(psi, complex_from_json(j.at("a_X")), complex_from_json(j.at("a_PX")),
                          complex_from_json(j.at("a_XP")), complex_from_json(j.at("a_tr")),
                          complex_from_json(j.at("a_trP")));
}

Matrix lmr_sequential_dense(std::span<const double> thetas, const Vector& psi, const Matrix& x) {
  require_normalized(psi);
  const int d = static_cast<int>(psi.size());
  require_square(x, d);
  const Matrix swap = permutation_operator(std::vector<int>{1, 0}, d).entries();
  const Matrix id = Matrix::Identity(d * d, d * d);
  const Matrix program = psi * psi.adjoint();
  Matrix rho = x;
  for (double theta : thetas) {
    const Matrix u = std::cos(theta) * id + cplx(0.0, std::sin(theta)) * swap;
    const Matrix joint = u * kron(rho, program) * u.adjoint();
    const std::vector<int> keep{0};
    rho = partial_trace(DenseOperator(joint, d, 2), keep).entries();
  }
  return rho;
}

Matrix psi_frame(const Vector& psi) {
  require_normalized(psi);
  const auto d = psi.size();
  Eigen::Index drop = 0;
  psi.cwiseAbs().maxCoeff(&drop);
  Matrix frame(d, d);
  frame.col(0) = psi;
  Eigen::Index col = 1;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i == drop) continue;
    Vector v = Vector::Unit(d, i);
    for (Eigen::Index c = 0; c < col; ++c) v -= frame.col(c) * frame.col(c).dot(v);
    for (Eigen::Index c = 0; c < col; ++c) v -= frame.col(c) * frame.col(c).dot(v);
    frame.col(col++) = v / v.norm();
  }
  return frame;
}

MeasureReflectChannel::MeasureReflectChannel(Vector psi, int n)
    : psi_(std::move(psi)), n_(n), d_(static_cast<int>(psi_.size())) {
  if (n < 1) throw DomainError("measure-and-reflect needs n >= 1");
  frame_ = psi_frame(psi_);
}

Matrix MeasureReflectChannel::apply(const Matrix& x) const {
  require_square(x, d_);
  // In the frame psi = e_0. With w(xi) = tr P_n |<xi|psi>|^{2n} and uniform xi,
  // E(X) = X - 2(A X + X A) + 4 B(X), A = int w xi, B(X) = int w xi X xi.
  // Moments of |xi_0|^{2n} prod |xi_i|^{2k_i} reduce to factorial ratios.
  const double n = n_;
  const double d = d_;
  const double den1 = n + d;
  const double den2 = (n + d) * (n + d + 1.0);
  // m2(x, y) = int w |xi_x|^2 |xi_y|^2
  auto m2 = [&](int a, int b) {
    const int t = (a == 0) + (b == 0);
    double k0 = 1.0;
    for (int i = 1; i <= t; ++i) k0 *= n + i;
    const double rest = (a != 0 && a == b) ? 2.0 : 1.0;
    return k0 * rest / den2;
  };
  const Matrix xf = frame_.adjoint() * x * frame_;
  Vector diag_a(d_);
  for (int i = 0; i < d_; ++i) diag_a(i) = (i == 0 ? n + 1.0 : 1.0) / den1;
  Matrix y = xf;
  for (int a = 0; a < d_; ++a)
    for (int e = 0; e < d_; ++e) y(a, e) -= 2.0 * (diag_a(a) + diag_a(e)) * xf(a, e);
  for (int a = 0; a < d_; ++a)
    for (int e = 0; e < d_; ++e) {
      cplx b = 0.0;
      if (a != e) {
        b = xf(a, e) * m2(a, e);
      } else {
        for (int c = 0; c < d_; ++c) b += xf(c, c) * m2(a, c);
      }
      y(a, e) += 4.0 * b;
    }
  return frame_ * y * frame_.adjoint();
}

Matrix mr_channel(const Vector& psi, int n, const Matrix& x) {
  return MeasureReflectChannel(psi, n).apply(x);
}

Matrix choi(const ChannelFn& channel, int d) {
  Matrix out = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      out.block(i * d, j * d, d, d) = channel(unit);
    }
  return out;
}

Matrix choi(const EffectiveChannel& channel) { return choi(as_channel(channel), channel.dim()); }

Matrix group_twirl_state(const Matrix& rho, const Vector& psi) {
  require_normalized(psi);
  const auto d = psi.size();
  require_square(rho, d);
  const Matrix p = psi * psi.adjoint();
  const Matrix perp = Matrix::Identity(d, d) - p;
  return (p * rho).trace() * p + (perp * rho).trace() * perp / static_cast<double>(d - 1);
}

Matrix apply_on_system(const ChannelFn& channel, const Matrix& rho, int d_r, int d_s) {
  if (rho.rows() != d_r * d_s || rho.cols() != d_r * d_s)
    throw DomainError("joint operator dimension mismatch");
  Matrix out(rho.rows(), rho.cols());
  for (int i = 0; i < d_r; ++i)
    for (int j = 0; j < d_r; ++j)
      out.block(i * d_s, j * d_s, d_s, d_s) = channel(rho.block(i * d_s, j * d_s, d_s, d_s));
  return out;
}

ChannelFn as_channel(const EffectiveChannel& ch) {
  return [ch](const Matrix& x) { return ch.apply(x); };
}

ChannelFn rotation_as_channel(const Vector& psi, double alpha) {
  const Matrix r = rotation_unitary(psi, alpha);
  return [r](const Matrix& x) -> Matrix { return r * x * r.adjoint(); };
}

}  // namespace reflectron
