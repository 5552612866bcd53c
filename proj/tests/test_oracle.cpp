#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "schur/oracle.hpp"
#include "schur/su2_engine.hpp"
#include "schur/su3_engine.hpp"

using namespace schur;

TEST_CASE("generator sanity") {
    auto g2 = Oracle::build_generators(2, 1);
    Eigen::SelfAdjointEigenSolver<Oracle::Mat> es(g2.j2);
    for (int i = 0; i < 2; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(0.75));

    auto g3 = Oracle::build_generators(3, 1);
    Eigen::SelfAdjointEigenSolver<Oracle::Mat> ef(g3.casimir_f);
    for (int i = 0; i < 3; ++i)
        CHECK(ef.eigenvalues()(i) == doctest::Approx(Oracle::casimir_f_value(1, 0)));
    Eigen::SelfAdjointEigenSolver<Oracle::Mat> eh(g3.casimir_h);
    for (int i = 0; i < 3; ++i)
        CHECK(eh.eigenvalues()(i) == doctest::Approx(Oracle::casimir_h_value(1, 0)));

    auto gg = Oracle::build_generators(3, 2);
    CHECK((gg.casimir_f - gg.casimir_f.adjoint()).norm() == doctest::Approx(0).epsilon(1e-12));
    CHECK((gg.casimir_h - gg.casimir_h.adjoint()).norm() == doctest::Approx(0).epsilon(1e-12));
    CHECK((gg.casimir_f * gg.casimir_h - gg.casimir_h * gg.casimir_f).norm() ==
          doctest::Approx(0).epsilon(1e-10));
}

TEST_CASE("su2 oracle states match the engine for n <= 5") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& lab : all_labels(Group::SU2, n)) {
            auto vec = Oracle::oracle_state(lab);
            auto map = decompose_su2(lab);
            CHECK(Oracle::fidelity(map, vec) == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("su3 oracle states match the engine for n <= 4") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& lab : all_labels(Group::SU3, n)) {
            auto vec = Oracle::oracle_state(lab);
            auto map = decompose_su3(lab);
            CHECK(Oracle::fidelity(map, vec) == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("oracle states are orthonormal and Casimir-sharp") {
    auto gens = Oracle::build_generators(3, 3);
    std::vector<Oracle::Vec> states;
    for (const auto& lab : all_labels(Group::SU3, 3)) {
        auto v = Oracle::oracle_state(lab);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-10));
        int P = lab.partition.row(0) - lab.partition.row(1);
        int Q = lab.partition.row(1) - lab.partition.row(2);
        std::complex<double> f = (v.adjoint() * gens.casimir_f * v)(0, 0);
        std::complex<double> h = (v.adjoint() * gens.casimir_h * v)(0, 0);
        CHECK(f.real() == doctest::Approx(Oracle::casimir_f_value(P, Q)).epsilon(1e-10));
        CHECK(h.real() == doctest::Approx(Oracle::casimir_h_value(P, Q)).epsilon(1e-10));
        states.push_back(v);
    }
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            CHECK(std::abs((states[i].adjoint() * states[j])(0, 0)) ==
                  doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("angular momentum degeneracy bookkeeping") {
    // the recursion k(j) = g(m=j) - g(m=j+1) on Jz degeneracies reproduces
    // the multiset of j values over all n-qubit paths
    for (int n = 2; n <= 8; ++n) {
        std::map<int, std::int64_t> path_count;
        for (const auto& lab : all_labels(Group::SU2, n))
            if (lab.q == 0) {  // one weight per (partition, path)
                int two_j = lab.partition.row(0) - lab.partition.row(1);
                path_count[two_j]++;
            }
        auto g = [&](int two_m) -> std::int64_t {
            if ((n + two_m) % 2 != 0) return 0;
            int ups = (n + two_m) / 2;
            if (ups < 0 || ups > n) return 0;
            std::int64_t c = 1;
            for (int i = 0; i < ups; ++i) c = c * (n - i) / (i + 1);
            return c;
        };
        for (const auto& [two_j, count] : path_count)
            CHECK(count == g(two_j) - g(two_j + 2));
    }
}

TEST_CASE("zero fidelity for orthogonal labels and one for self") {
    SchurLabel a;
    a.group = Group::SU2;
    a.partition = {{2, 0}, 2};
    a.q = 1;
    a.path = {1};
    SchurLabel b = a;
    b.partition = {{1, 1}, 2};
    b.q = 0;
    b.path = {0};
    auto va = Oracle::oracle_state(a);
    CHECK(Oracle::fidelity(decompose_su2(a), va) == doctest::Approx(1.0));
    CHECK(Oracle::fidelity(decompose_su2(b), va) == doctest::Approx(0.0));
}

TEST_CASE("carrier dimensions match the representation dimension along paths") {
    // grow a carrier step by step and compare against the closed-form dims
    auto dim_su2 = [](int two_j) { return two_j + 1; };
    for (const auto& path : {std::vector<int>{1, 1}, std::vector<int>{1, 0},
                             std::vector<int>{0, 1}}) {
        SchurLabel lab;
        lab.group = Group::SU2;
        lab.path = path;
        auto partials = replay_path(path, 2);
        lab.partition = partials.back();
        lab.q = 0;
        // oracle_state succeeds only if every projection was clean; combined
        // with orthonormality over all weights this pins the dimensions
        int two_j = lab.partition.row(0) - lab.partition.row(1);
        std::vector<Oracle::Vec> states;
        for (int q = 0; q <= two_j; ++q) {
            lab.q = q;
            states.push_back(Oracle::oracle_state(lab));
        }
        CHECK(int(states.size()) == dim_su2(two_j));
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = i + 1; j < states.size(); ++j)
                CHECK(std::abs((states[i].adjoint() * states[j])(0, 0)) ==
                      doctest::Approx(0.0).epsilon(1e-10));
    }
    // SU(3): all weights of the octet built along the [2,1] path are
    // orthonormal, so the projected carrier has the full dimension 8
    SchurLabel lab;
    lab.group = Group::SU3;
    lab.partition = {{2, 1, 0}, 3};
    lab.path = {2, 1};
    std::vector<Oracle::Vec> states;
    for (const auto& st : enumerate_states(1, 1)) {
        lab.k = st.k;
        lab.l = st.l;
        lab.m = st.m;
        states.push_back(Oracle::oracle_state(lab));
    }
    CHECK(states.size() == 8);
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            CHECK(std::abs((states[i].adjoint() * states[j])(0, 0)) ==
                  doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("coupling coefficients factor into su2 part times isoscalar") {
    // extract <parent x quark | child> from raw oracle vectors and compare
    // with the engine's factorized coefficients, sector by sector; the
    // oracle fixes phases only up to a sign per multiplet, so magnitudes
    // are compared per entry and relative signs within each parent multiplet
    SchurLabel parent_lab;
    parent_lab.group = Group::SU3;
    parent_lab.partition = {{2, 1, 0}, 3};
    parent_lab.path = {2, 1};

    struct ChildSpec {
        std::vector<int> rows;
        std::vector<int> path;
        int P, Q;
    };
    // the three children of the octet reachable by one box
    std::vector<ChildSpec> children = {{{3, 1, 0}, {2, 1, 2}, 2, 1},
                                       {{2, 2, 0}, {2, 1, 1}, 0, 2},
                                       {{2, 1, 1}, {2, 1, 0}, 1, 0}};
    for (const auto& spec : children) {
        for (const auto& child_state : enumerate_states(spec.P, spec.Q)) {
            SchurLabel child_lab;
            child_lab.group = Group::SU3;
            child_lab.partition = {spec.rows, 3};
            child_lab.path = spec.path;
            child_lab.k = child_state.k;
            child_lab.l = child_state.l;
            child_lab.m = child_state.m;
            Oracle::Vec child_vec = Oracle::oracle_state(child_lab);
            SU3Term term{{spec.rows, 3}, child_state.k, child_state.l, child_state.m};
            auto branches = apply_ucg_inv_su3(term, child_lab.path.back());
            double norm_from_branches = 0;
            for (const auto& br : branches) {
                parent_lab.k = br.state.k;
                parent_lab.l = br.state.l;
                parent_lab.m = br.state.m;
                Oracle::Vec pv = Oracle::oracle_state(parent_lab);
                // tensor the emitted quark onto the last slot
                Oracle::Vec tensored = Oracle::Vec::Zero(pv.size() * 3);
                for (int i = 0; i < pv.size(); ++i)
                    tensored(i * 3 + br.emitted_quark) = pv(i);
                double overlap = std::abs((tensored.adjoint() * child_vec)(0, 0));
                CHECK(overlap == doctest::Approx(std::abs(br.amp.to_double())).epsilon(1e-9));
                norm_from_branches += br.amp.squared().to_double();
            }
            CHECK(norm_from_branches == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
