#pragma once

#include <string>

#include "schur/amplitude_map.hpp"
#include "schur/rep_core.hpp"

namespace schur::cli {

struct Report {
    bool pass = true;
    std::string json;  // machine readable
    std::string text;  // human readable rendering of the same content
};

enum class Format { Text, Json };

Report decompose_report(const std::string& label_text);
Report synthesize_report(Group g, int n, const std::string& out_path);
Report simulate_report(const std::string& circuit_path, const std::string& label_text,
                       const std::string& mode);
Report verify_report(Group g, int max_n, int threads);
Report resources_report(Group g, int n);
Report isoscalar_table_report(int P1, int Q1);

// full command line; returns the process exit code (0 pass, 1 verification
// failure, 2 usage or parse error)
int run(int argc, char** argv);

}  // namespace schur::cli
