#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace schur {

enum class Group { SU2, SU3 };

inline int group_dim(Group g) { return g == Group::SU2 ? 2 : 3; }

// Young diagram rows, weakly decreasing, at most d rows.
struct Partition {
    std::vector<int> rows;
    int d = 2;

    int boxes() const {
        int n = 0;
        for (int r : rows) n += r;
        return n;
    }
    int row(int i) const { return i < int(rows.size()) ? rows[i] : 0; }
    friend bool operator==(const Partition& a, const Partition& b) {
        // trailing zero rows are not significant
        int m = int(a.rows.size() > b.rows.size() ? a.rows.size() : b.rows.size());
        for (int i = 0; i < m; ++i)
            if (a.row(i) != b.row(i)) return false;
        return a.d == b.d;
    }
};

// integer state label of an SU(2) irrep: two_j = 2j, q = j+m in [0, 2j]
struct ReprStateSU2 {
    int two_j = 0;
    int q = 0;
};

// integer state label of an SU(3) irrep
struct ReprStateSU3 {
    int P = 0, Q = 0;
    int k = 0, l = 0, m = 0;
    friend bool operator==(const ReprStateSU3& a, const ReprStateSU3& b) {
        return a.P == b.P && a.Q == b.Q && a.k == b.k && a.l == b.l && a.m == b.m;
    }
};

// Full description of a Schur-basis eigenstate: the diagram, the internal
// weight, and the box-addition path (entry i says which row box i+2 entered;
// SU(2): 1/0 = first/second row, SU(3): 2/1/0 = first/second/third row).
struct SchurLabel {
    Group group = Group::SU2;
    Partition partition;
    int q = 0;           // SU(2) weight
    int k = 0, l = 0, m = 0;  // SU(3) weight
    std::vector<int> path;

    int n() const { return int(path.size()) + 1; }
};

bool validate_partition(const std::vector<int>& rows, int d);

// dimension of the S_n irrep via hook lengths (n! / prod of hooks)
std::int64_t hook_dimension_sn(const Partition& p);

std::int64_t su3_dimension(int P, int Q);

// all (k,l,m) of the irrep, k descending, then l ascending, then m descending
std::vector<ReprStateSU3> enumerate_states(int P, int Q);

bool valid_su3_state(int P, int Q, int k, int l, int m);
// valid (k,l) pair with the k=m restriction implicit (used by isoscalars)
bool valid_su3_kl(int P, int Q, int k, int l);

// (2T, 2T3, 3Y) from (k,l,m); throws on out-of-range state
struct TTY {
    int two_T = 0, two_T3 = 0, three_Y = 0;
};
TTY tty_from_klm(int P, int Q, int k, int l, int m);

// inverse; throws "not a state of (P,Q)" on non-integral or out-of-range input
ReprStateSU3 klm_from_tty(int P, int Q, int two_T, int two_T3, int three_Y);

struct QuarkContent {
    int n_u = 0, n_d = 0, n_s = 0;
};
QuarkContent quark_content(const SchurLabel& label);

// partial diagrams after each box addition, starting from the single box;
// throws at the first illegal step naming it
std::vector<Partition> replay_path(const std::vector<int>& path, int d);

// every valid path (standard Young tableau) of the given diagram
std::vector<std::vector<int>> enumerate_paths(const Partition& p);

// all valid SchurLabels on n qudits; count is group_dim^n
std::vector<SchurLabel> all_labels(Group g, int n);

void validate_label(const SchurLabel& label);

// CLI label grammar:
//   su2:(l1,l2);q;p1,...,p_{n-1}
//   su3:(l1,l2,l3);k,l,m;p1,...,p_{n-1}
// (path section empty for n = 1)
std::string format_label(const SchurLabel& label);
SchurLabel parse_label(const std::string& text);

}  // namespace schur
