// Copyright 2026 The nlgames Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlg/pseudo_expectation.hpp"

#include <cmath>

namespace nlg {

CryptoMomentMatrix::CryptoMomentMatrix(int nA, int nB, int d)
    : nA_(nA), nB_(nB), d_(d),
      corr_(static_cast<std::size_t>(nA) * d * nB * d, cplx(0)),
      bob_(static_cast<std::size_t>(nB) * d * nB * d, cplx(0)) {
  if (nA < 1 || nB < 1 || d < 2) throw InputError("bad moment matrix shape");
}

Mat CryptoMomentMatrix::c_block() const {
  Mat c(nA_, nB_);
  for (int x = 0; x < nA_; ++x)
    for (int y = 0; y < nB_; ++y) c(x, y) = corr(x, 1, y, 1).real();
  return c;
}

CMat CryptoMomentMatrix::s_block() const {
  CMat s(nB_, nB_);
  for (int y = 0; y < nB_; ++y)
    for (int z = 0; z < nB_; ++z) s(y, z) = bob(y, d_ - 1, z, 1);
  return s;
}

CryptoMomentMatrix build_moment_matrix(const HonestProver& p) {
  check_prover(p);
  const auto& s = p.strategy;
  const int nA = int(s.alice.size()), nB = int(s.bob.size()), d = s.order;
  const auto dA = s.state.dA;
  CryptoMomentMatrix m(nA, nB, d);

  std::vector<std::vector<CMat>> bpow(nB);
  for (int y = 0; y < nB; ++y)
    for (int l = 0; l < d; ++l) bpow[y].push_back(lift_right(unitary_power(s.bob[y], l), dA));

  for (int x = 0; x < nA; ++x)
    for (std::size_t br = 0; br < p.first_round[x].size(); ++br) {
      const double w = p.first_round[x][br].weight;
      for (const auto& [a, psi] : post_measurement_states(p, x, br)) {
        for (int y = 0; y < nB; ++y)
          for (int l = 0; l < d; ++l) {
            const cplx e = psi.dot(bpow[y][l] * psi);
            for (int k = 0; k < d; ++k) m.corr(x, k, y, l) += w * root_of_unity(d, double(k) * a) * e;
          }
        for (int y = 0; y < nB; ++y)
          for (int l = 0; l < d; ++l) {
            CVec left = bpow[y][(d - l) % d] * psi;  // (B_y^l)^dag psi
            for (int z = 0; z < nB; ++z)
              for (int mm = 0; mm < d; ++mm)
                m.bob(y, l, z, mm) += w / nA * left.dot(bpow[z][mm] * psi);
          }
      }
    }
  // Hermitian symmetrization of the Bob block.
  for (int y = 0; y < nB; ++y)
    for (int l = 0; l < d; ++l)
      for (int z = 0; z < nB; ++z)
        for (int mm = 0; mm < d; ++mm) {
          const int li = (d - l) % d, mi = (d - mm) % d;
          if (std::make_pair(y * d + l, z * d + mm) < std::make_pair(z * d + mi, y * d + li)) {
            // (B_y^l B_z^m)^dag = B_z^{-m} B_y^{-l}
            cplx avg = (m.bob(y, l, z, mm) + std::conj(m.bob(z, mi, y, li))) / 2.0;
            m.bob(y, l, z, mm) = avg;
            m.bob(z, mi, y, li) = std::conj(avg);
          }
        }
  return m;
}

CryptoMomentMatrix build_moment_matrix(const ClassicalProver& p, int d, double leakage) {
  const int nA = int(p.first.size()), nB = int(p.second.size());
  CryptoMomentMatrix m(nA, nB, d);
  auto informed = [&](int x, int y) { return p.informed.empty() ? p.second[y] : p.informed[x][y]; };
  for (int x = 0; x < nA; ++x)
    for (int k = 0; k < d; ++k)
      for (int y = 0; y < nB; ++y)
        for (int l = 0; l < d; ++l)
          m.corr(x, k, y, l) =
              root_of_unity(d, double(k) * p.first[x]) *
              (leakage * root_of_unity(d, double(l) * informed(x, y)) +
               (1.0 - leakage) * root_of_unity(d, double(l) * p.second[y]));
  for (int y = 0; y < nB; ++y)
    for (int l = 0; l < d; ++l)
      for (int z = 0; z < nB; ++z)
        for (int mm = 0; mm < d; ++mm) {
          cplx v = 0;
          for (int x = 0; x < nA; ++x)
            v += leakage * root_of_unity(d, double(l) * informed(x, y) + double(mm) * informed(x, z)) +
                 (1.0 - leakage) * root_of_unity(d, double(l) * p.second[y] + double(mm) * p.second[z]);
          m.bob(y, l, z, mm) = v / double(nA);
        }
  return m;
}

Symbol Symbol::adjoint(int d) const {
  Symbol s = *this;
  s.order = (d - order % d) % d;
  if (s.order == 0) s = Symbol::one();
  return s;
}

Degree2Poly& Degree2Poly::add(cplx coef, Symbol left, Symbol right) {
  terms_.push_back({coef, left, right});
  return *this;
}

Degree2Poly& Degree2Poly::operator+=(const Degree2Poly& other) {
  if (other.d_ != d_) throw InputError("polynomials of different order");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

Degree2Poly& Degree2Poly::operator*=(cplx s) {
  for (auto& t : terms_) t.coef *= s;
  return *this;
}

Degree2Poly operator+(Degree2Poly a, const Degree2Poly& b) { return a += b; }
Degree2Poly operator*(cplx s, Degree2Poly a) { return a *= s; }

LinearForm& LinearForm::identity(cplx c) {
  id_ += c;
  return *this;
}

LinearForm& LinearForm::alice(int x, int k, cplx c) {
  if (has_alice_ && (alice_.left.index != x || alice_.left.order != k))
    throw InputError("a linear form holds a single Alice generator");
  if (has_alice_) {
    alice_.coef += c;
  } else {
    alice_ = {c, Symbol::A(x, k), Symbol::one()};
    has_alice_ = true;
  }
  return *this;
}

LinearForm& LinearForm::bob(int y, int l, cplx c) {
  bob_.push_back({c, Symbol::B(y, l), Symbol::one()});
  return *this;
}

Degree2Poly LinearForm::hermitian_square() const {
  std::vector<Monomial> gens;
  if (id_ != cplx(0)) gens.push_back({id_, Symbol::one(), Symbol::one()});
  if (has_alice_) gens.push_back(alice_);
  gens.insert(gens.end(), bob_.begin(), bob_.end());
  Degree2Poly p(d_);
  for (const auto& gi : gens)
    for (const auto& gj : gens) p.add(std::conj(gi.coef) * gj.coef, gi.left.adjoint(d_), gj.left);
  return p;
}

namespace {

Symbol reduce(Symbol s, int d) {
  if (s.kind == Symbol::Kind::identity) return s;
  s.order = ((s.order % d) + d) % d;
  return s.order == 0 ? Symbol::one() : s;
}

void check_index(const Symbol& s, const CryptoMomentMatrix& m) {
  if (s.kind == Symbol::Kind::alice && (s.index < 0 || s.index >= m.nA()))
    throw InputError("Alice index out of range");
  if (s.kind == Symbol::Kind::bob && (s.index < 0 || s.index >= m.nB()))
    throw InputError("Bob index out of range");
}

cplx monomial_value(Symbol l, Symbol r, const CryptoMomentMatrix& m) {
  using K = Symbol::Kind;
  const int d = m.d();
  l = reduce(l, d);
  r = reduce(r, d);
  check_index(l, m);
  check_index(r, m);
  if (l.kind == K::identity) std::swap(l, r);
  if (l.kind == K::identity) return 1.0;
  if (r.kind == K::identity) {
    if (l.kind == K::alice) return m.corr(l.index, l.order, 0, 0);
    return m.bob(l.index, l.order, l.index, 0);
  }
  if (l.kind == K::alice && r.kind == K::alice) {
    if (l.index != r.index)
      throw InputError("monomial multiplies two different first-round observables");
    const int k = (l.order + r.order) % d;
    return k == 0 ? cplx(1.0) : m.corr(l.index, k, 0, 0);
  }
  if (l.kind == K::alice) return m.corr(l.index, l.order, r.index, r.order);
  if (r.kind == K::alice) return m.corr(r.index, r.order, l.index, l.order);
  return m.bob(l.index, l.order, r.index, r.order);
}

}  // namespace

cplx pseudo_expect(const Degree2Poly& p, const CryptoMomentMatrix& m) {
  if (p.d() != m.d()) throw InputError("polynomial order does not match moment data");
  cplx v = 0;
  for (const auto& t : p.terms()) v += t.coef * monomial_value(t.left, t.right, m);
  return v;
}

Degree2Poly game_polynomial(const BellFunctional& fn) {
  Degree2Poly p(2);
  for (Eigen::Index x = 0; x < fn.nA(); ++x)
    for (Eigen::Index y = 0; y < fn.nB(); ++y)
      if (fn.phi(x, y) != 0.0) p.add(fn.phi(x, y), Symbol::A(int(x)), Symbol::B(int(y)));
  return p;
}

Degree2Poly satwap_polynomial(const SatwapGame& g) {
  Degree2Poly p(g.d);
  for (int k = 1; k < g.d; ++k)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) p.add(g.coefficient(x, y, k), Symbol::A(x, k), Symbol::B(y, g.d - k));
  return p;
}

std::vector<LinearForm> certificate_squares(const SosCertificate& cert) {
  std::vector<LinearForm> out;
  for (Eigen::Index x = 0; x < cert.F.rows(); ++x) {
    if (!cert.keeps(x)) continue;
    LinearForm f(2);
    f.alice(int(x), 1, 1.0);
    for (Eigen::Index y = 0; y < cert.F.cols(); ++y)
      if (cert.F(x, y) != 0.0) f.bob(int(y), 1, -cert.F(x, y));
    out.push_back(f);
  }
  return out;
}

std::vector<LinearForm> satwap_squares(const SatwapGame& g) {
  std::vector<LinearForm> out;
  const int d = g.d;
  for (int x = 0; x < 2; ++x)
    for (int k = 1; k < d; ++k) {
      const cplx a = g.a[k], ac = std::conj(a), wk = root_of_unity(d, k);
      LinearForm f(d);
      f.alice(x, d - k, 1.0);
      if (x == 0) {
        f.bob(0, d - k, -a).bob(1, d - k, -ac * wk);
      } else {
        f.bob(0, d - k, -ac).bob(1, d - k, -a);
      }
      out.push_back(f);
    }
  return out;
}

TermCheck sos_term_check(const SosCertificate& cert, const CryptoMomentMatrix& m, double delta) {
  if (m.d() != 2 || m.nA() != cert.F.rows() || m.nB() != cert.F.cols())
    throw InputError("moment data does not match certificate");
  TermCheck tc;
  double weighted = 0.0;
  auto squares = certificate_squares(cert);
  std::size_t i = 0;
  for (Eigen::Index x = 0; x < cert.F.rows(); ++x) {
    if (!cert.keeps(x)) continue;
    tc.names.push_back("square_x" + std::to_string(x));
    tc.values.push_back(pseudo_expect(squares[i++].hermitian_square(), m).real());
    tc.weights.push_back(cert.lambda_a(x) / 2.0);
    weighted += tc.weights.back() * tc.values.back();
  }
  Degree2Poly bob(2);
  bob.add(cert.offset, Symbol::one(), Symbol::one());
  for (Eigen::Index y = 0; y < cert.G.rows(); ++y)
    for (Eigen::Index z = 0; z < cert.G.cols(); ++z)
      if (cert.G(y, z) != 0.0) bob.add(-cert.G(y, z), Symbol::B(int(y)), Symbol::B(int(z)));
  tc.bob_value = pseudo_expect(bob, m).real();

  BellFunctional fn;
  fn.phi = cert.phi;
  const double bias = pseudo_expect(game_polynomial(fn), m).real();
  tc.identity_residual = std::abs(cert.xi_q - bias - weighted - tc.bob_value);
  tc.pass = tc.bob_value >= -delta - kTermTolerance;
  for (double v : tc.values) tc.pass = tc.pass && v >= -delta - kTermTolerance;
  return tc;
}

TermCheck satwap_term_check(const SatwapGame& g, const CryptoMomentMatrix& m, double delta) {
  if (m.d() != g.d || m.nA() != 2 || m.nB() != 2) throw InputError("moment data does not match game");
  TermCheck tc;
  double weighted = 0.0;
  auto squares = satwap_squares(g);
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const int x = int(i) / (g.d - 1), k = int(i) % (g.d - 1) + 1;
    tc.names.push_back("square_x" + std::to_string(x) + "_k" + std::to_string(k));
    tc.values.push_back(pseudo_expect(squares[i].hermitian_square(), m).real());
    tc.weights.push_back(0.5);
    weighted += 0.5 * tc.values.back();
  }
  const double value = pseudo_expect(satwap_polynomial(g), m).real();
  tc.identity_residual = std::abs(satwap_bounds(g.d).quantum - value - weighted);
  tc.pass = true;
  for (double v : tc.values) tc.pass = tc.pass && v >= -delta - kTermTolerance;
  return tc;
}

BoundReport compiled_bound_report(const BellFunctional& fn, const CryptoMomentMatrix& m,
                                  const SecurityConfig& cfg) {
  check_config(cfg);
  if (m.d() != 2 || m.nA() != fn.nA() || m.nB() != fn.nB())
    throw InputError("moment data does not match functional");
  BoundReport r;
  r.compiled_bias = pseudo_expect(game_polynomial(fn), m).real();
  r.xi_q = solve_xor_sdp(fn).dual_value;
  r.excess = r.compiled_bias - r.xi_q;
  r.pass = r.compiled_bias <= r.xi_q + cfg.delta_qhe + 1e-8;
  return r;
}

BoundReport compiled_satwap_report(const SatwapGame& g, const CryptoMomentMatrix& m,
                                   const SecurityConfig& cfg) {
  check_config(cfg);
  BoundReport r;
  r.compiled_bias = pseudo_expect(satwap_polynomial(g), m).real();
  r.xi_q = satwap_bounds(g.d).quantum;
  r.excess = r.compiled_bias - r.xi_q;
  r.pass = r.compiled_bias <= r.xi_q + cfg.delta_qhe + 1e-8;
  return r;
}

CorrelatorEstimate sampled_correlators(const CompiledRun& run, int nA, int nB) {
  Mat s1 = Mat::Zero(nA, nB), s2 = Mat::Zero(nA, nB);
  Eigen::MatrixXi n = Eigen::MatrixXi::Zero(nA, nB);
  for (const auto& t : run.transcripts) {
    if (t.x < 0 || t.x >= nA || t.y < 0 || t.y >= nB || t.a > 1 || t.b > 1)
      throw InputError("transcript does not match a binary game of this shape");
    const double v = (t.a ^ t.b) ? -1.0 : 1.0;
    s1(t.x, t.y) += v;
    s2(t.x, t.y) += v * v;
    n(t.x, t.y) += 1;
  }
  CorrelatorEstimate e{Mat::Zero(nA, nB), Mat::Zero(nA, nB), n};
  for (int x = 0; x < nA; ++x)
    for (int y = 0; y < nB; ++y) {
      if (n(x, y) == 0) continue;
      const double k = n(x, y), mean = s1(x, y) / k;
      e.mean(x, y) = mean;
      e.stderr_(x, y) = k > 1 ? std::sqrt(std::max(0.0, s2(x, y) / k - mean * mean) / (k - 1)) : 0.0;
    }
  return e;
}

}  // namespace nlg
