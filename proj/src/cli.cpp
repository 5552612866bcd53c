#include "schur/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "schur/circuit_synth.hpp"
#include "schur/oracle.hpp"
#include "schur/state_sim.hpp"
#include "schur/su2_engine.hpp"
#include "schur/su3_engine.hpp"

namespace schur::cli {

namespace {

using nlohmann::json;

json amp_to_json(const SqrtSum& amp) {
    json terms = json::array();
    for (const auto& t : amp.as_sqrt_terms())
        terms.push_back({{"sign", t.sign()},
                         {"num", t.radicand().num()},
                         {"den", t.radicand().den()}});
    return terms;
}

std::string amp_to_text(const SqrtSum& amp) { return amp.str(); }

json map_to_json(const AmplitudeMap& map) {
    json rows = json::array();
    for (const auto& [key, amp] : map.entries())
        rows.push_back({{"key", key}, {"amp", amp_to_json(amp)}, {"value", amp.to_double()}});
    return rows;
}

std::string map_to_text(const AmplitudeMap& map) {
    std::ostringstream os;
    for (const auto& [key, amp] : map.entries()) {
        std::ostringstream val;
        val.precision(15);
        val << amp.to_double();
        os << "  |" << key << ">  " << amp_to_text(amp) << "  = " << val.str() << "\n";
    }
    return os.str();
}

json stamp() {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    return std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
}

Report wrap(const std::string& command, json inputs, json outputs, const std::string& text,
            bool pass) {
    json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["outputs"] = std::move(outputs);
    j["pass"] = pass;
    j["timestamp"] = stamp();
    Report r;
    r.pass = pass;
    r.json = j.dump(2);
    std::ostringstream os;
    os << "== " << command << (pass ? "  [pass]" : "  [FAIL]") << "\n" << text;
    r.text = os.str();
    return r;
}

AmplitudeMap decompose_any(const SchurLabel& label) {
    return label.group == Group::SU2 ? decompose_su2(label) : decompose_su3(label);
}

int env_threads() {
    const char* env = std::getenv("SCHUR_SYNTH_THREADS");
    if (!env) return int(std::thread::hardware_concurrency());
    int v = std::atoi(env);
    return v > 0 ? v : 1;
}

template <typename Fn>
void parallel_over(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int nthreads = std::min<std::size_t>(threads, count);
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

Report decompose_report(const std::string& label_text) {
    SchurLabel label = parse_label(label_text);
    AmplitudeMap map = decompose_any(label);
    json inputs{{"label", format_label(label)}};
    json outputs;
    outputs["amplitudes"] = map_to_json(map);
    outputs["norm_squared"] = map.norm_squared().str();
    std::ostringstream os;
    os << "label " << format_label(label) << "\n" << map_to_text(map);
    return wrap("decompose", inputs, outputs, os.str(), true);
}

Report synthesize_report(Group g, int n, const std::string& out_path) {
    Circuit c = build_usch_inv(g, n);
    std::string payload = c.to_json();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << payload << "\n";
    }
    auto rc = count_resources(c);
    json inputs{{"group", c.group}, {"n", n}, {"out", out_path}};
    json outputs{{"total_bits", rc.total_bits},
                 {"total_gates", rc.total_gates},
                 {"counts", rc.by_type}};
    std::ostringstream os;
    os << "circuit " << c.group << " n=" << n << ": " << rc.total_bits << " bits, "
       << rc.total_gates << " gates\n";
    for (const auto& [k, v] : rc.by_type) os << "  " << k << ": " << v << "\n";
    if (!out_path.empty()) os << "  written to " << out_path << "\n";
    return wrap("synthesize", inputs, outputs, os.str(), true);
}

Report simulate_report(const std::string& circuit_path, const std::string& label_text,
                       const std::string& mode) {
    std::ifstream in(circuit_path);
    if (!in) throw std::runtime_error("cannot read " + circuit_path);
    std::stringstream buf;
    buf << in.rdbuf();
    Circuit c = Circuit::from_json(buf.str());
    SchurLabel label = parse_label(label_text);
    json inputs{{"circuit", circuit_path}, {"label", format_label(label)}, {"mode", mode}};
    if (mode == "float") {
        SimState st = run(c, label_assignment(c, label), SimMode::Float);
        auto map = readout_map_float(c, st);
        json rows = json::array();
        std::ostringstream os;
        for (const auto& [key, value] : map) {
            rows.push_back({{"key", key}, {"value", value}});
            os << "  |" << key << ">  " << value << "\n";
        }
        return wrap("simulate", inputs, {{"amplitudes", rows}}, os.str(), true);
    }
    AmplitudeMap map = simulate_label(c, label);
    json outputs{{"amplitudes", map_to_json(map)}, {"norm_squared", map.norm_squared().str()}};
    std::ostringstream os;
    os << "circuit " << circuit_path << ", label " << format_label(label) << "\n"
       << map_to_text(map);
    return wrap("simulate", inputs, outputs, os.str(), true);
}

Report verify_report(Group g, int max_n, int threads) {
    if (threads <= 0) threads = env_threads();
    const int oracle_cap = g == Group::SU2 ? 6 : 4;
    json levels = json::array();
    std::ostringstream os;
    bool pass = true;
    for (int n = 1; n <= max_n; ++n) {
        auto labels = all_labels(g, n);
        struct Row {
            std::string label;
            bool norm_ok = false, oracle_ok = true, circuit_ok = true;
            double fidelity = -1;
        };
        std::vector<Row> rows(labels.size());
        Circuit circuit;
        if (n >= 2) circuit = build_usch_inv(g, n);
        std::atomic<bool> level_pass{true};
        parallel_over(labels.size(), threads, [&](std::size_t i) {
            Row& row = rows[i];
            row.label = format_label(labels[i]);
            try {
                AmplitudeMap engine = decompose_any(labels[i]);
                row.norm_ok = engine.norm_squared() == Rational(1);
                if (n <= oracle_cap) {
                    auto vec = Oracle::oracle_state(labels[i]);
                    row.fidelity = Oracle::fidelity(engine, vec);
                    row.oracle_ok = row.fidelity >= 1.0 - 1e-10;
                }
                if (n >= 2) {
                    AmplitudeMap sim = simulate_label(circuit, labels[i]);
                    row.circuit_ok = sim == engine;
                    if (row.circuit_ok) {
                        SimState fst = run(circuit, label_assignment(circuit, labels[i]),
                                           SimMode::Float);
                        auto fmap = readout_map_float(circuit, fst);
                        for (const auto& [key, amp] : engine.entries()) {
                            auto it = fmap.find(key);
                            double want = amp.to_double();
                            double got = it == fmap.end() ? 0.0 : it->second;
                            if (std::abs(want - got) > 1e-12) row.circuit_ok = false;
                        }
                    }
                }
            } catch (const std::exception&) {
                row.norm_ok = row.oracle_ok = row.circuit_ok = false;
            }
            if (!(row.norm_ok && row.oracle_ok && row.circuit_ok)) level_pass = false;
        });
        pass &= level_pass;
        int failures = 0;
        for (const auto& row : rows)
            if (!(row.norm_ok && row.oracle_ok && row.circuit_ok)) ++failures;
        json jl{{"n", n},
                {"labels", labels.size()},
                {"failures", failures},
                {"oracle_checked", n <= oracle_cap},
                {"circuit_checked", n >= 2}};
        json bad = json::array();
        for (const auto& row : rows)
            if (!(row.norm_ok && row.oracle_ok && row.circuit_ok))
                bad.push_back({{"label", row.label},
                               {"norm_ok", row.norm_ok},
                               {"oracle_ok", row.oracle_ok},
                               {"circuit_ok", row.circuit_ok},
                               {"fidelity", row.fidelity}});
        jl["failing"] = bad;
        levels.push_back(jl);
        os << "n=" << n << ": " << labels.size() << " labels, " << failures << " failures"
           << (n <= oracle_cap ? " (engine+oracle" : " (engine")
           << (n >= 2 ? "+circuit)" : ")") << "\n";
        for (const auto& row : rows)
            if (!(row.norm_ok && row.oracle_ok && row.circuit_ok))
                os << "  FAIL " << row.label << "\n";
    }
    json inputs{{"group", g == Group::SU2 ? "su2" : "su3"},
                {"max_n", max_n},
                {"threads", threads}};
    return wrap("verify", inputs, {{"levels", levels}}, os.str(), pass);
}

Report resources_report(Group g, int n) {
    Circuit c = build_usch_inv(g, n);
    auto rc = count_resources(c);
    auto pred = predicted_resources(g, n);
    bool pass = true;
    json rows = json::array();
    std::ostringstream os;
    os << "group " << c.group << " n=" << n << "\n";
    for (const std::string type : {"NOT", "CNOT", "CCNOT", "DATA_ROT"}) {
        long long measured = rc.by_type.at(type);
        long long published = pred.published.at(type);
        long long own = pred.own.at(type);
        bool own_ok = measured == own;
        bool published_ok = type == "DATA_ROT"
                            ? measured == published
                            : (measured <= 2 * published && published <= 2 * measured);
        if (type == "NOT" && published == 0) published_ok = true;  // no published term to band
        pass &= own_ok && published_ok;
        rows.push_back({{"type", type},
                        {"measured", measured},
                        {"published_form", published},
                        {"own_form", own},
                        {"own_exact", own_ok},
                        {"published_within_factor_2", published_ok}});
        os << "  " << type << ": measured " << measured << ", published form " << published
           << ", own form " << own << (own_ok ? "" : "  OWN-MISMATCH")
           << (published_ok ? "" : "  OUTSIDE-BAND") << "\n";
    }
    json inputs{{"group", c.group}, {"n", n}};
    return wrap("resources", inputs, {{"rows", rows}, {"total_bits", rc.total_bits}}, os.str(),
                pass);
}

Report isoscalar_table_report(int P1, int Q1) {
    if (P1 < 0 || Q1 < 0) throw std::invalid_argument("negative representation label");
    json rows = json::array();
    std::ostringstream os;
    const int childPQ[3][2] = {{P1 + 1, Q1}, {P1 - 1, Q1 + 1}, {P1, Q1 - 1}};
    for (int row = 0; row < 3; ++row) {
        int P = childPQ[row][0], Q = childPQ[row][1];
        if (P < 0 || Q < 0) continue;
        int p = 2 - row;
        for (int k = Q; k <= P + Q; ++k)
            for (int l = 0; l <= std::min(Q, k); ++l) {
                struct Entry {
                    const char* quark;
                    int k1, l1;
                };
                Entry entries[3] = {
                    {"u", p == 0 ? k + 1 : k, p == 0 ? l : l - 1},
                    {"u", p == 0 ? k : k - 1, p == 0 ? l + 1 : l},
                    {"s", p == 0 ? k + 1 : k, p == 0 ? l + 1 : l},
                };
                for (const auto& e : entries) {
                    if (!valid_su3_kl(P1, Q1, e.k1, e.l1)) continue;
                    IsoscalarQuery qy{P1,
                                      Q1,
                                      e.k1,
                                      e.l1,
                                      e.quark[0] == 'u' ? QuarkKind::U : QuarkKind::S,
                                      P,
                                      Q,
                                      k,
                                      l};
                    SqrtRational f = isoscalar(qy);
                    rows.push_back({{"p", p},
                                    {"child_P", P},
                                    {"child_Q", Q},
                                    {"child_k", k},
                                    {"child_l", l},
                                    {"parent_k", e.k1},
                                    {"parent_l", e.l1},
                                    {"quark", e.quark},
                                    {"sign", f.sign()},
                                    {"num", f.radicand().num()},
                                    {"den", f.radicand().den()},
                                    {"value", f.to_double()}});
                    os << "  p=" << p << " child(" << P << "," << Q << ") (k,l)=(" << k << ","
                       << l << ")  parent(k1,l1)=(" << e.k1 << "," << e.l1 << ") " << e.quark
                       << ": " << f.str() << "\n";
                }
            }
    }
    json inputs{{"P1", P1}, {"Q1", Q1}};
    return wrap("isoscalar-table", inputs, {{"rows", rows}}, os.str(), true);
}

namespace {
Group parse_group(const std::string& s) {
    if (s == "su2") return Group::SU2;
    if (s == "su3") return Group::SU3;
    throw CLI::ValidationError("--group", "group must be su2 or su3");
}

void print_report(const Report& r, Format fmt) {
    if (fmt == Format::Json)
        std::printf("%s\n", r.json.c_str());
    else
        std::printf("%s", r.text.c_str());
}
}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"inverse Schur transform toolkit for SU(2) and SU(3) eigenstates"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string label, group = "su2", out, circuit_path, mode = "exact";
    int n = 2, max_n = 3, P1 = 1, Q1 = 0;

    auto* dec = app.add_subcommand("decompose", "expand a Schur label over basis strings");
    dec->add_option("label", label, "label, e.g. su2:(2,1);1;1,0")->required();

    auto* syn = app.add_subcommand("synthesize", "emit the inverse Schur circuit as JSON");
    syn->add_option("--group", group)->check(CLI::IsMember({"su2", "su3"}));
    syn->add_option("--n", n)->required();
    syn->add_option("--out", out);

    auto* sim = app.add_subcommand("simulate", "run a circuit file on a label");
    sim->add_option("circuit", circuit_path)->required();
    sim->add_option("--label", label)->required();
    sim->add_option("--mode", mode)->check(CLI::IsMember({"exact", "float"}));

    auto* ver = app.add_subcommand("verify", "sweep engine vs oracle vs circuit");
    ver->add_option("GROUP", group, "su2 or su3")->check(CLI::IsMember({"su2", "su3"}));
    ver->add_option("MAX_N", max_n, "largest particle count to sweep");
    ver->add_option("--group", group)->check(CLI::IsMember({"su2", "su3"}))
        ->excludes("GROUP");
    ver->add_option("--max-n", max_n)->excludes("MAX_N");

    auto* res = app.add_subcommand("resources", "measured vs predicted gate counts");
    res->add_option("--group", group)->check(CLI::IsMember({"su2", "su3"}));
    res->add_option("--n", n)->required();

    auto* iso = app.add_subcommand("isoscalar-table", "dump the isoscalar factors of a parent");
    iso->add_option("P1", P1)->required();
    iso->add_option("Q1", Q1)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    Format fmt = format == "json" ? Format::Json : Format::Text;
    try {
        Report r;
        if (*dec) r = decompose_report(label);
        if (*syn) r = synthesize_report(parse_group(group), n, out);
        if (*sim) r = simulate_report(circuit_path, label, mode);
        if (*ver) r = verify_report(parse_group(group), max_n, 0);
        if (*res) r = resources_report(parse_group(group), n);
        if (*iso) r = isoscalar_table_report(P1, Q1);
        print_report(r, fmt);
        return r.pass ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace schur::cli
