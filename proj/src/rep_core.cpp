#include "schur/rep_core.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace schur {

bool validate_partition(const std::vector<int>& rows, int d) {
    if (int(rows.size()) > d) {
        // trailing zeros are allowed beyond d only if they are zeros
        for (std::size_t i = d; i < rows.size(); ++i)
            if (rows[i] != 0) return false;
    }
    int prev = rows.empty() ? 0 : rows[0];
    if (prev < 0) return false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] > prev) return false;
        prev = rows[i];
    }
    return true;
}

std::int64_t hook_dimension_sn(const Partition& p) {
    if (!validate_partition(p.rows, p.d)) throw std::invalid_argument("invalid partition");
    int n = p.boxes();
    if (n == 0) return 1;
    // column lengths
    std::vector<int> cols(p.row(0), 0);
    for (int r = 0; r < int(p.rows.size()); ++r)
        for (int c = 0; c < p.rows[r]; ++c) cols[c]++;
    // n! / prod hooks, computed as an exact integer
    __int128 numer = 1;
    for (int i = 2; i <= n; ++i) numer *= i;
    __int128 denom = 1;
    for (int r = 0; r < int(p.rows.size()); ++r)
        for (int c = 0; c < p.rows[r]; ++c) {
            int hook = (p.rows[r] - c - 1) + (cols[c] - r - 1) + 1;
            denom *= hook;
        }
    if (denom == 0 || numer % denom != 0)
        throw std::logic_error("hook_dimension_sn: non-integral result");
    return std::int64_t(numer / denom);
}

std::int64_t su3_dimension(int P, int Q) {
    if (P < 0 || Q < 0) throw std::invalid_argument("su3_dimension: negative label");
    return std::int64_t(P + 1) * (Q + 1) * (P + Q + 2) / 2;
}

bool valid_su3_kl(int P, int Q, int k, int l) {
    return P >= 0 && Q >= 0 && k >= Q && k <= P + Q && l >= 0 && l <= Q;
}

bool valid_su3_state(int P, int Q, int k, int l, int m) {
    return valid_su3_kl(P, Q, k, l) && m >= l && m <= k;
}

std::vector<ReprStateSU3> enumerate_states(int P, int Q) {
    std::vector<ReprStateSU3> out;
    for (int k = P + Q; k >= Q; --k)
        for (int l = 0; l <= Q; ++l)
            for (int m = k; m >= l; --m) out.push_back({P, Q, k, l, m});
    return out;
}

TTY tty_from_klm(int P, int Q, int k, int l, int m) {
    if (!valid_su3_state(P, Q, k, l, m))
        throw std::invalid_argument("tty_from_klm: not a state of (P,Q)");
    return {k - l, 2 * m - k - l, 3 * (k + l) - 2 * (P + 2 * Q)};
}

ReprStateSU3 klm_from_tty(int P, int Q, int two_T, int two_T3, int three_Y) {
    // k+l = (3Y + 2(P+2Q))/3, k-l = 2T, m = (2T3 + k + l)/2
    int kl3 = three_Y + 2 * (P + 2 * Q);
    if (kl3 % 3 != 0) throw std::invalid_argument("klm_from_tty: not a state of (P,Q)");
    int kl = kl3 / 3;
    if ((kl + two_T) % 2 != 0) throw std::invalid_argument("klm_from_tty: not a state of (P,Q)");
    int k = (kl + two_T) / 2;
    int l = kl - k;
    if ((two_T3 + kl) % 2 != 0) throw std::invalid_argument("klm_from_tty: not a state of (P,Q)");
    int m = (two_T3 + kl) / 2;
    if (!valid_su3_state(P, Q, k, l, m))
        throw std::invalid_argument("klm_from_tty: not a state of (P,Q)");
    return {P, Q, k, l, m};
}

QuarkContent quark_content(const SchurLabel& label) {
    if (label.group != Group::SU3) throw std::invalid_argument("quark_content: SU(3) labels only");
    int lam3 = label.partition.row(2);
    int n = label.partition.boxes();
    QuarkContent qc;
    qc.n_u = label.m + lam3;
    qc.n_d = label.k + label.l - label.m + lam3;
    qc.n_s = n - qc.n_u - qc.n_d;
    if (qc.n_u < 0 || qc.n_d < 0 || qc.n_s < 0)
        throw std::invalid_argument("quark_content: inconsistent label");
    return qc;
}

std::vector<Partition> replay_path(const std::vector<int>& path, int d) {
    std::vector<Partition> out;
    Partition cur{{1}, d};
    out.push_back(cur);
    for (std::size_t i = 0; i < path.size(); ++i) {
        int p = path[i];
        if (p < 0 || p >= d) {
            std::ostringstream os;
            os << "replay_path: entry p" << (i + 1) << " = " << p << " out of range for d=" << d;
            throw std::invalid_argument(os.str());
        }
        // path value d-1 means first row, 0 means row d
        int row = (d - 1) - p;
        while (int(cur.rows.size()) <= row) cur.rows.push_back(0);
        cur.rows[row]++;
        if (!validate_partition(cur.rows, d)) {
            std::ostringstream os;
            os << "replay_path: illegal addition at step " << (i + 1) << " (row " << (row + 1)
               << ")";
            throw std::invalid_argument(os.str());
        }
        out.push_back(cur);
    }
    return out;
}

namespace {
void collect_paths(Partition& cur, int remaining, int d, std::vector<int>& prefix,
                   const Partition& target, std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        if (cur == target) out.push_back(prefix);
        return;
    }
    for (int p = d - 1; p >= 0; --p) {
        int row = (d - 1) - p;
        // adding to row requires it stays weakly decreasing and within target
        int above = row == 0 ? INT32_MAX : cur.row(row - 1);
        if (cur.row(row) + 1 > above) continue;
        if (cur.row(row) + 1 > target.row(row)) continue;
        while (int(cur.rows.size()) <= row) cur.rows.push_back(0);
        cur.rows[row]++;
        prefix.push_back(p);
        collect_paths(cur, remaining - 1, d, prefix, target, out);
        prefix.pop_back();
        cur.rows[row]--;
    }
}
}  // namespace

std::vector<std::vector<int>> enumerate_paths(const Partition& target) {
    if (!validate_partition(target.rows, target.d))
        throw std::invalid_argument("enumerate_paths: invalid partition");
    int n = target.boxes();
    if (n == 0) return {};
    if (target.row(0) == 0) return {};
    std::vector<std::vector<int>> out;
    Partition cur{{1}, target.d};
    std::vector<int> prefix;
    collect_paths(cur, n - 1, target.d, prefix, target, out);
    return out;
}

namespace {
void partitions_of(int n, int d, int maxrow, std::vector<int>& cur,
                   std::vector<Partition>& out) {
    if (int(cur.size()) == d) {
        if (n == 0) out.push_back({cur, d});
        return;
    }
    for (int r = std::min(n, maxrow); r >= 0; --r) {
        cur.push_back(r);
        partitions_of(n - r, d, r, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<SchurLabel> all_labels(Group g, int n) {
    int d = group_dim(g);
    std::vector<Partition> parts;
    std::vector<int> cur;
    partitions_of(n, d, n, cur, parts);
    std::vector<SchurLabel> out;
    for (const auto& part : parts) {
        if (part.row(0) == 0) continue;
        auto paths = enumerate_paths(part);
        for (const auto& path : paths) {
            if (g == Group::SU2) {
                int two_j = part.row(0) - part.row(1);
                for (int q = two_j; q >= 0; --q) {
                    SchurLabel lab;
                    lab.group = g;
                    lab.partition = part;
                    lab.q = q;
                    lab.path = path;
                    out.push_back(lab);
                }
            } else {
                int P = part.row(0) - part.row(1);
                int Q = part.row(1) - part.row(2);
                for (const auto& st : enumerate_states(P, Q)) {
                    SchurLabel lab;
                    lab.group = g;
                    lab.partition = part;
                    lab.k = st.k;
                    lab.l = st.l;
                    lab.m = st.m;
                    lab.path = path;
                    out.push_back(lab);
                }
            }
        }
    }
    return out;
}

void validate_label(const SchurLabel& label) {
    int d = group_dim(label.group);
    if (!validate_partition(label.partition.rows, d))
        throw std::invalid_argument("label: invalid partition");
    if (label.partition.boxes() != label.n())
        throw std::invalid_argument("label: path length does not match box count");
    auto partials = replay_path(label.path, d);
    if (!(partials.back() == label.partition))
        throw std::invalid_argument("label: path does not rebuild the partition");
    if (label.group == Group::SU2) {
        int two_j = label.partition.row(0) - label.partition.row(1);
        if (label.q < 0 || label.q > two_j)
            throw std::invalid_argument("label: weight q out of range [0, 2j]");
    } else {
        int P = label.partition.row(0) - label.partition.row(1);
        int Q = label.partition.row(1) - label.partition.row(2);
        if (!valid_su3_state(P, Q, label.k, label.l, label.m))
            throw std::invalid_argument("label: weight (k,l,m) out of range");
    }
}

std::string format_label(const SchurLabel& label) {
    std::ostringstream os;
    if (label.group == Group::SU2) {
        os << "su2:(" << label.partition.row(0) << "," << label.partition.row(1) << ");"
           << label.q << ";";
    } else {
        os << "su3:(" << label.partition.row(0) << "," << label.partition.row(1) << ","
           << label.partition.row(2) << ");" << label.k << "," << label.l << "," << label.m
           << ";";
    }
    for (std::size_t i = 0; i < label.path.size(); ++i) {
        if (i) os << ",";
        os << label.path[i];
    }
    return os.str();
}

namespace {
std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("label parse: bad integer in ") + what +
                                        ": '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}
}  // namespace

SchurLabel parse_label(const std::string& text) {
    SchurLabel lab;
    std::string rest;
    if (text.rfind("su2:", 0) == 0) {
        lab.group = Group::SU2;
        rest = text.substr(4);
    } else if (text.rfind("su3:", 0) == 0) {
        lab.group = Group::SU3;
        rest = text.substr(4);
    } else {
        throw std::invalid_argument("label parse: expected su2: or su3: prefix");
    }
    if (rest.empty() || rest[0] != '(')
        throw std::invalid_argument("label parse: expected '(' after group prefix");
    std::size_t close = rest.find(')');
    if (close == std::string::npos) throw std::invalid_argument("label parse: missing ')'");
    auto rows = parse_int_list(rest.substr(1, close - 1), "partition");
    int d = group_dim(lab.group);
    if (int(rows.size()) != d)
        throw std::invalid_argument("label parse: partition must list exactly d rows");
    lab.partition = {rows, d};
    if (close + 1 >= rest.size() || rest[close + 1] != ';')
        throw std::invalid_argument("label parse: expected ';' after partition");
    std::string tail = rest.substr(close + 2);
    std::size_t semi = tail.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("label parse: expected ';' after weight");
    auto weight = parse_int_list(tail.substr(0, semi), "weight");
    if (lab.group == Group::SU2) {
        if (weight.size() != 1) throw std::invalid_argument("label parse: su2 weight is one integer q");
        lab.q = weight[0];
    } else {
        if (weight.size() != 3)
            throw std::invalid_argument("label parse: su3 weight is three integers k,l,m");
        lab.k = weight[0];
        lab.l = weight[1];
        lab.m = weight[2];
    }
    lab.path = parse_int_list(tail.substr(semi + 1), "path");
    validate_label(lab);
    return lab;
}

}  // namespace schur
