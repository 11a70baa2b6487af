#include <cstdio>
#include <cstring>
#include <iostream>

#include "cat2/scenarios.hpp"

using namespace cat2;

// One line per criterion: "[NN] name PASS|FAIL|BUDGET (seconds)". With -v the
// assertion lines of each scenario follow its summary line.
int main(int argc, char** argv) {
    bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
    Collector col;
    int failed = 0;
    for (auto& info : scenario_catalog()) {
        auto rep = run_scenario(info.name, &col);
        bool late = rep.seconds > info.limit_seconds;
        bool ok = rep.ok() && !late;
        failed += !ok;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f s", rep.seconds);
        std::cout << "[" << (info.criterion < 10 ? "0" : "") << info.criterion << "] " << info.name << " "
                  << (ok ? "PASS" : rep.ok() ? "FAIL" : status_name(rep.status)) << " (" << buf;
        if (late) std::cout << ", limit " << info.limit_seconds << " s";
        std::cout << ")\n";
        if (verbose || !ok) {
            for (auto& l : rep.lines)
                if (verbose || !l.pass)
                    std::cout << "     " << (l.pass ? "PASS" : "FAIL") << " [" << tag_name(l.tag) << "] " << l.text << "\n";
            if (!rep.error.empty()) std::cout << "     error: " << rep.error << "\n";
        }
        std::cout.flush();
    }
    return failed ? 1 : 0;
}
