#include "doctest.h"
#include "oracles.hpp"
#include "tricav/analytic.hpp"
#include "tricav/model.hpp"

using namespace tricav;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

SystemParams generic_params() {
  SystemParams p;
  p.delta1 = 0.3;
  p.delta2 = -0.7;
  p.delta_a = 1.1;
  p.J = 0.45;
  p.g = 0.62;
  p.omega1 = 0.2;
  p.omega2 = 0.35;
  p.kappa1 = 1.0;
  p.kappa2 = 0.8;
  p.gamma = 0.1;
  return p;
}

// Operators assembled from oracle::kron in |n1 n2 a> order.
struct ReferenceOps {
  ComplexMatrix n1, n2, excited;
  explicit ReferenceOps(Index d) {
    const ComplexMatrix id_d = ComplexMatrix::Identity(d, d);
    const ComplexMatrix id_2 = ComplexMatrix::Identity(2, 2);
    ComplexMatrix num = ComplexMatrix::Zero(d, d);
    for (Index n = 0; n < d; ++n) num(n, n) = static_cast<double>(n);
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(1, 1) = 1.0;
    n1 = oracle::kron(oracle::kron(num, id_d), id_2);
    n2 = oracle::kron(oracle::kron(id_d, num), id_2);
    excited = oracle::kron(oracle::kron(id_d, id_d), e);
  }
};

}  // namespace

TEST_CASE("zero parameters give the zero Hamiltonian") {
  SystemParams p;
  p.kappa1 = p.kappa2 = 0.0;
  const auto layout = HilbertLayout::resonator_atom(1);
  CHECK(max_abs(build_hamiltonian(p, layout)) == 0.0);
  CHECK(max_abs(build_hamiltonian(p, layout, HamiltonianKind::EffectiveNonHermitian)) == 0.0);
}

TEST_CASE("uncoupled Hamiltonian is diagonal with n1 D1 + n2 D2 +- Da/2") {
  SystemParams p;
  p.delta1 = 1.0;
  p.delta2 = 0.37;
  p.delta_a = 0.8;
  const auto layout = HilbertLayout::resonator_atom(2);
  const ComplexMatrix h = build_hamiltonian(p, layout);
  for (Index i = 0; i < layout.total(); ++i) {
    const auto d = layout.digits_of(i);
    const double expected = d[0] * 1.0 + d[1] * 0.37 + (d[2] == 1 ? 0.4 : -0.4);
    CHECK(std::abs(h(i, i) - cdouble(expected)) < 1e-14);
    for (Index j = 0; j < layout.total(); ++j)
      if (j != i) CHECK(h(i, j) == cdouble(0.0));
  }
}

TEST_CASE("coupling matrix elements sit where the layout puts them") {
  const SystemParams p = generic_params();
  const auto layout = HilbertLayout::resonator_atom(1);
  const ComplexMatrix h = build_hamiltonian(p, layout);
  const Index s100 = layout.index_of({1, 0, 0}), s010 = layout.index_of({0, 1, 0});
  const Index s001 = layout.index_of({0, 0, 1}), s000 = layout.index_of({0, 0, 0});
  CHECK(std::abs(h(s100, s010) - cdouble(p.J)) < 1e-15);
  CHECK(std::abs(h(s100, s001) - cdouble(p.g)) < 1e-15);
  CHECK(std::abs(h(s100, s000) - cdouble(p.omega1)) < 1e-15);
  CHECK(std::abs(h(s010, s000) - cdouble(p.omega2)) < 1e-15);
  CHECK(std::abs(h(s000, s000) - cdouble(-p.delta_a / 2)) < 1e-15);
}

TEST_CASE("rotating-frame Hamiltonian is Hermitian") {
  for (int n_max = 1; n_max <= 3; ++n_max) {
    const auto layout = HilbertLayout::resonator_atom(n_max);
    for (int trial = 0; trial < 10; ++trial) {
      SystemParams p = oracle::random_symmetric_params();
      p.delta2 = oracle::uniform(-2, 2);
      const ComplexMatrix h = build_hamiltonian(p, layout);
      CHECK(hermiticity_error(h) <= 1e-12 * h.norm());
    }
  }
}

TEST_CASE("effective Hamiltonian differs by the decay terms only") {
  const SystemParams p = generic_params();
  const auto layout = HilbertLayout::resonator_atom(2);
  const ReferenceOps ref(3);
  const cdouble i(0, 1);
  const ComplexMatrix expected = build_hamiltonian(p, layout) - i * (p.kappa1 / 2) * ref.n1 -
                                 i * (p.kappa2 / 2) * ref.n2 - i * (p.gamma / 2) * ref.excited;
  CHECK(max_abs(build_hamiltonian(p, layout, HamiltonianKind::EffectiveNonHermitian) - expected) < 1e-14);
}

TEST_CASE("Jaynes-Cummings kind rejects hopping or a second drive") {
  SystemParams p = generic_params();
  const auto layout = HilbertLayout::resonator_atom(1);
  try {
    build_hamiltonian(p, layout, HamiltonianKind::JaynesCummings);
    FAIL("expected InconsistentParameters");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InconsistentParameters);
  }
  p.J = 0.0;
  CHECK_THROWS_AS(build_hamiltonian(p, layout, HamiltonianKind::JaynesCummings), Error);
  p.omega2 = 0.0;
  CHECK(max_abs(build_hamiltonian(p, layout, HamiltonianKind::JaynesCummings) - build_hamiltonian(p, layout)) == 0.0);
}

TEST_CASE("anti-Hermitian part") {
  const auto layout = HilbertLayout::resonator_atom(1);
  CHECK(max_abs(anti_hermitian_part(build_hamiltonian(generic_params(), layout))) < 1e-15);

  SystemParams p;
  p.kappa1 = p.kappa2 = 1.0;
  p.gamma = 0.1;
  const ComplexMatrix ah = anti_hermitian_part(build_hamiltonian(p, layout, HamiltonianKind::EffectiveNonHermitian));
  const ReferenceOps ref(2);
  const cdouble i(0, 1);
  const ComplexMatrix expected = -i * 0.5 * (ref.n1 + ref.n2) - i * 0.05 * ref.excited;
  CHECK(max_abs(ah - expected) < 1e-15);

  const ComplexMatrix ah_generic =
      anti_hermitian_part(build_hamiltonian(generic_params(), layout, HamiltonianKind::EffectiveNonHermitian));
  const ComplexVector ev = eigenvalues(ah_generic);
  for (Index k = 0; k < ev.size(); ++k) {
    CHECK(std::abs(ev(k).real()) < 1e-12);
    CHECK(ev(k).imag() <= 1e-12);
  }
}

TEST_CASE("single-excitation block reproduces the weak-drive coefficient matrix") {
  const auto layout = HilbertLayout::resonator_atom(1);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemParams p = oracle::random_symmetric_params();
    const ComplexMatrix h = build_hamiltonian(p, layout, HamiltonianKind::EffectiveNonHermitian);
    const Index idx[3] = {layout.index_of({1, 0, 0}), layout.index_of({0, 1, 0}), layout.index_of({0, 0, 1})};
    const cdouble ground = h(layout.index_of({0, 0, 0}), layout.index_of({0, 0, 0}));
    CHECK(std::abs(ground - cdouble(-p.delta_a / 2)) < 1e-14);
    Eigen::Matrix3cd block;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) block(r, c) = h(idx[r], idx[c]) - (r == c ? ground : cdouble(0.0));
    CHECK((block - coefficient_matrix(p)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("JC block matches the 2x2 system once the atomic convention is aligned") {
  SystemParams p = generic_params();
  p.J = 0.0;
  p.omega2 = 0.0;
  const auto layout = HilbertLayout::resonator_atom(1);
  const ComplexMatrix h = build_hamiltonian(p, layout, HamiltonianKind::EffectiveNonHermitian);
  const Index idx[2] = {layout.index_of({1, 0, 0}), layout.index_of({0, 0, 1})};
  const cdouble ground = h(layout.index_of({0, 0, 0}), layout.index_of({0, 0, 0}));
  Eigen::Matrix2cd block;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) block(r, c) = h(idx[r], idx[c]) - (r == c ? ground : cdouble(0.0));
  // The Hamiltonian gives Da - i gamma/2 on the atom; the JC system writes Da/2 - i gamma/2.
  SystemParams doubled = p;
  doubled.delta_a = 2 * p.delta_a;
  CHECK((block - jc_matrix(doubled)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parameter names round-trip") {
  SystemParams p;
  for (auto name : kParamNames) {
    set_param(p, name, 0.25);
    CHECK(get_param(p, name) == 0.25);
  }
  set_param(p, "delta", -1.5);
  CHECK(p.delta1 == -1.5);
  CHECK(p.delta2 == -1.5);
  CHECK_THROWS_AS(set_param(p, "detla", 1.0), Error);
  p.gamma = -0.1;
  CHECK_THROWS_AS(p.validate(), Error);
}
