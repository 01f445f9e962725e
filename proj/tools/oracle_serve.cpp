// Stand-alone norm oracle: loads a hidden matrix and answers line-protocol
// queries on stdin.  Request {"i": int, "poly": {"coeffs": [[re,im],...]}},
// response {"norm": float}, one JSON object per line.  Exits 0 at EOF.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unicell/jsonio.hpp"
#include "unicell/reconstruct.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Serve spectral norm queries for a hidden matrix"};
    std::string hidden_file;
    app.add_option("--hidden", hidden_file, "matrix JSON file")->required();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        unicell::SimulatedOracle oracle(unicell::load_matrix(hidden_file));
        std::string line;
        while (std::getline(std::cin, line)) {
            if (line.empty()) continue;
            const auto req = nlohmann::json::parse(line, nullptr, false);
            if (req.is_discarded() || !req.contains("i") || !req.contains("poly")) {
                std::fprintf(stderr, "error: malformed request: %s\n", line.c_str());
                return 1;
            }
            const auto i = req.at("i").get<std::size_t>();
            const unicell::Polynomial f =
                unicell::polynomial_from_json(req.at("poly").dump());
            const double v = oracle.query(i, f);
            std::printf("{\"norm\": %s}\n", unicell::format_double(v).c_str());
            std::fflush(stdout);
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
