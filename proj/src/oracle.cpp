#include "schur/oracle.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace schur {

namespace {

using Mat = Oracle::Mat;
using Vec = Oracle::Vec;

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

int ipow(int base, int exp) {
    int v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

// single-site operator embedded at the given site, particle 1 most significant
Mat site_op(const Mat& op, int d, int n, int site) {
    Mat left = Mat::Identity(ipow(d, site), ipow(d, site));
    Mat right = Mat::Identity(ipow(d, n - site - 1), ipow(d, n - site - 1));
    return kron(kron(left, op), right);
}

Mat site_sum(const Mat& op, int d, int n) {
    int dim = ipow(d, n);
    Mat out = Mat::Zero(dim, dim);
    for (int s = 0; s < n; ++s) out += site_op(op, d, n, s);
    return out;
}

struct SU3Singles {
    Mat t3, y, tp, tm, up, um, vp, vm;
};

// basis order |0> = s, |1> = d, |2> = u
SU3Singles su3_singles() {
    SU3Singles g;
    g.t3 = Mat::Zero(3, 3);
    g.t3(1, 1) = -0.5;
    g.t3(2, 2) = 0.5;
    g.y = Mat::Zero(3, 3);
    g.y(0, 0) = -2.0 / 3.0;
    g.y(1, 1) = 1.0 / 3.0;
    g.y(2, 2) = 1.0 / 3.0;
    g.tp = Mat::Zero(3, 3);
    g.tp(2, 1) = 1.0;  // d -> u
    g.tm = g.tp.adjoint();
    g.vp = Mat::Zero(3, 3);
    g.vp(2, 0) = 1.0;  // s -> u
    g.vm = g.vp.adjoint();
    g.up = Mat::Zero(3, 3);
    g.up(1, 0) = 1.0;  // s -> d
    g.um = g.up.adjoint();
    return g;
}

// the nine A-operators of the Casimir construction, global over n sites
std::array<std::array<Mat, 4>, 4> global_a(int n) {
    auto s = su3_singles();
    std::array<std::array<Mat, 4>, 4> A;
    Mat t3 = site_sum(s.t3, 3, n);
    Mat y = site_sum(s.y, 3, n);
    A[1][1] = 0.5 * y + t3;
    A[2][2] = 0.5 * y - t3;
    A[3][3] = -y;
    A[1][2] = site_sum(s.tp, 3, n);
    A[1][3] = site_sum(s.vp, 3, n);
    A[2][3] = site_sum(s.up, 3, n);
    A[2][1] = site_sum(s.tm, 3, n);
    A[3][1] = site_sum(s.vm, 3, n);
    A[3][2] = site_sum(s.um, 3, n);
    return A;
}

void gram_schmidt(Mat& b) {
    for (int c = 0; c < b.cols(); ++c) {
        for (int prev = 0; prev < c; ++prev)
            b.col(c) -= (b.col(prev).adjoint() * b.col(c))(0, 0) * b.col(prev);
        double nrm = b.col(c).norm();
        if (nrm < 1e-10) throw std::logic_error("oracle: degenerate basis in projection");
        b.col(c) /= nrm;
    }
}

// keep the eigenvectors of (restricted) op whose eigenvalue is near target
Mat project_eigenspace(const Mat& basis, const Mat& full_op, double target, double tol) {
    Mat r = basis.adjoint() * full_op * basis;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (r + r.adjoint()));
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - target) < tol) keep.push_back(i);
    if (keep.empty()) throw std::logic_error("oracle: empty projection (invalid label?)");
    Mat sel(r.rows(), int(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) sel.col(int(i)) = es.eigenvectors().col(keep[i]);
    Mat out = basis * sel;
    gram_schmidt(out);
    return out;
}

}  // namespace

namespace {
Oracle::Generators build_generators_uncached(int d, int n);
}

Oracle::Generators Oracle::build_generators(int d, int n) {
    static std::map<std::pair<int, int>, Generators> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lk(mutex);
    auto it = cache.find({d, n});
    if (it == cache.end()) it = cache.emplace(std::pair{d, n}, build_generators_uncached(d, n)).first;
    return it->second;
}

namespace {
Oracle::Generators build_generators_uncached(int d, int n) {
    if (d != 2 && d != 3) throw std::invalid_argument("build_generators: d must be 2 or 3");
    Oracle::Generators g;
    if (d == 2) {
        Mat sz = Mat::Zero(2, 2);
        sz(0, 0) = -0.5;
        sz(1, 1) = 0.5;
        Mat sp = Mat::Zero(2, 2);
        sp(1, 0) = 1.0;  // |0> -> |1>
        g.jz = site_sum(sz, 2, n);
        g.jplus = site_sum(sp, 2, n);
        Mat jminus = g.jplus.adjoint();
        g.j2 = g.jz * g.jz + 0.5 * (g.jplus * jminus + jminus * g.jplus);
        return g;
    }
    auto s = su3_singles();
    g.t3 = site_sum(s.t3, 3, n);
    g.y = site_sum(s.y, 3, n);
    Mat tp = site_sum(s.tp, 3, n);
    Mat tm = site_sum(s.tm, 3, n);
    g.t2 = g.t3 * g.t3 + 0.5 * (tp * tm + tm * tp);
    auto A = global_a(n);
    int dim = A[1][1].rows();
    // the A-bilinear double counts relative to the sum of squared generators
    // whose eigenvalues the (P,Q) formula quotes
    g.casimir_f = Mat::Zero(dim, dim);
    for (int i = 1; i <= 3; ++i)
        for (int k = 1; k <= 3; ++k) g.casimir_f += 0.5 * A[i][k] * A[k][i];
    g.casimir_h = Mat::Zero(dim, dim);
    for (int i = 1; i <= 3; ++i)
        for (int k = 1; k <= 3; ++k)
            for (int l = 1; l <= 3; ++l)
                g.casimir_h += 0.5 * (A[i][l] * A[k][i] * A[l][k] + A[l][i] * A[i][k] * A[k][l]);
    return g;
}
}  // namespace

double Oracle::casimir_f_value(int P, int Q) {
    return (double(P) * P + double(P) * Q + double(Q) * Q) / 3.0 + P + Q;
}

double Oracle::casimir_h_value(int P, int Q) {
    return (double(P) - Q) * (2.0 * P + Q + 3.0) * (double(P) + 2.0 * Q + 3.0) / 9.0;
}

Oracle::Vec Oracle::oracle_state(const SchurLabel& label) {
    validate_label(label);
    const int d = group_dim(label.group);
    const int n = label.n();
    const double tol = 1e-8;
    auto partials = replay_path(label.path, d);

    Mat basis = Mat::Identity(d, d);  // one particle: the fundamental carrier
    for (int step = 1; step < n; ++step) {
        // tensor the carrier with one more site
        Mat grown(basis.rows() * d, basis.cols() * d);
        grown.setZero();
        for (int c = 0; c < basis.cols(); ++c)
            for (int q = 0; q < d; ++q)
                for (int r = 0; r < basis.rows(); ++r)
                    grown(r * d + q, c * d + q) = basis(r, c);
        const Partition& part = partials[step];
        if (d == 2) {
            auto gen = build_generators(2, step + 1);
            double two_j = part.row(0) - part.row(1);
            double target = (two_j / 2.0) * (two_j / 2.0 + 1.0);
            basis = project_eigenspace(grown, gen.j2, target, tol);
        } else {
            auto gen = build_generators(3, step + 1);
            int P = part.row(0) - part.row(1);
            int Q = part.row(1) - part.row(2);
            basis = project_eigenspace(grown, gen.casimir_f, casimir_f_value(P, Q), tol);
            basis = project_eigenspace(basis, gen.casimir_h, casimir_h_value(P, Q), tol);
        }
    }

    if (d == 2) {
        auto gen = build_generators(2, n);
        int two_j = label.partition.row(0) - label.partition.row(1);
        double m = label.q - two_j / 2.0;
        basis = project_eigenspace(basis, gen.jz, m, tol);
    } else {
        auto gen = build_generators(3, n);
        int P = label.partition.row(0) - label.partition.row(1);
        int Q = label.partition.row(1) - label.partition.row(2);
        auto t = tty_from_klm(P, Q, label.k, label.l, label.m);
        double T = t.two_T / 2.0;
        basis = project_eigenspace(basis, gen.t2, T * (T + 1.0), tol);
        basis = project_eigenspace(basis, gen.t3, t.two_T3 / 2.0, tol);
        basis = project_eigenspace(basis, gen.y, t.three_Y / 3.0, tol);
    }
    if (basis.cols() != 1)
        throw std::logic_error("oracle: weight selection is not one-dimensional");
    return basis.col(0);
}

Oracle::Vec Oracle::to_vector(const AmplitudeMap& map, int d, int n) {
    int dim = 1; for (int i = 0; i < n; ++i) dim *= d;
    Vec v = Vec::Zero(dim);
    for (const auto& [key, amp] : map.entries()) {
        if (int(key.size()) != n) throw std::invalid_argument("to_vector: key length mismatch");
        int idx = 0;
        for (char c : key) {
            int digit = c - '0';
            if (digit < 0 || digit >= d) throw std::invalid_argument("to_vector: bad digit");
            idx = idx * d + digit;
        }
        v(idx) = amp.to_double();
    }
    return v;
}

double Oracle::fidelity(const AmplitudeMap& engine_map, const Vec& oracle_vec) {
    int dim = int(oracle_vec.size());
    int n = 0, d = 0;
    for (int dd = 2; dd <= 3; ++dd) {
        int nn = 0, v = 1;
        while (v < dim) {
            v *= dd;
            ++nn;
        }
        if (v == dim) {
            d = dd;
            n = nn;
            break;
        }
    }
    if (d == 0) throw std::invalid_argument("fidelity: dimension is not a power of 2 or 3");
    if (!engine_map.entries().empty() &&
        int(engine_map.entries().begin()->first.size()) != n)
        throw std::invalid_argument("fidelity: dimension mismatch");
    Vec e = to_vector(engine_map, d, n);
    std::complex<double> ip = (oracle_vec.adjoint() * e)(0, 0);
    return std::abs(ip) / e.norm();
}

}  // namespace schur
