#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "schur/amplitude_map.hpp"
#include "schur/rep_core.hpp"

namespace schur {

// Brute-force reference built directly from generator matrices on the full
// d^n tensor space. Independent of every Clebsch-Gordan formula: states are
// produced by eigenprojection, and compared by fidelity only.
class Oracle {
  public:
    using Mat = Eigen::MatrixXcd;
    using Vec = Eigen::VectorXcd;

    // single-site generator set summed over n sites
    struct Generators {
        Mat jz, jplus, j2;                 // SU(2)
        Mat t3, y, t2, casimir_f, casimir_h;  // SU(3)
    };
    static Generators build_generators(int d, int n);

    // quadratic/cubic Casimir eigenvalues of the irrep
    static double casimir_f_value(int P, int Q);
    static double casimir_h_value(int P, int Q);

    // reference state for the label, unique up to a global phase
    static Vec oracle_state(const SchurLabel& label);

    static double fidelity(const AmplitudeMap& engine_map, const Vec& oracle_vec);

    static Vec to_vector(const AmplitudeMap& map, int d, int n);
};

}  // namespace schur
