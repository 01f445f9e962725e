#include "unicell/jsonio.hpp"

#include <csignal>
#include <cstring>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "unicell/errors.hpp"

namespace unicell {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw dimension_error(std::string(what) + ": malformed JSON");
    }
    return j;
}

cplx complex_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw dimension_error(std::string(what) + ": complex entries must be [re, im] numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(cplx v) {
    return "[" + format_double(v.real()) + ", " + format_double(v.imag()) + "]";
}

std::string matrix_to_json(const CMatrix& a) {
    const std::size_t n = a.order();
    std::string out = "{\"n\": " + std::to_string(n) + ", \"entries\": [";
    for (std::size_t i = 0; i < n; ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out += ", ";
            out += format_complex(a(i, j));
        }
        out += "]";
    }
    out += "]}";
    return out;
}

CMatrix matrix_from_json(const std::string& text) {
    const json j = parse_or_throw(text, "matrix");
    if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
        throw dimension_error("matrix: expected an object with fields n and entries");
    }
    if (!j["n"].is_number_unsigned() && !j["n"].is_number_integer()) {
        throw dimension_error("matrix: field n must be a nonnegative integer");
    }
    const long long ns = j["n"].get<long long>();
    if (ns < 0) throw dimension_error("matrix: field n must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(ns);
    const json& rows = j["entries"];
    if (!rows.is_array() || rows.size() != n) {
        throw dimension_error("matrix: entries must hold exactly n rows");
    }
    CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) {
            throw dimension_error("matrix: each row must hold exactly n entries");
        }
        for (std::size_t k = 0; k < n; ++k) a(i, k) = complex_from_json(rows[i][k], "matrix");
    }
    return a;
}

CMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dimension_error("cannot open matrix file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return matrix_from_json(buf.str());
}

void save_matrix(const std::string& path, const CMatrix& a) {
    std::ofstream out(path);
    if (!out) throw dimension_error("cannot write matrix file: " + path);
    out << matrix_to_json(a) << "\n";
}

std::string polynomial_to_json(const Polynomial& p) {
    std::string out = "{\"coeffs\": [";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) out += ", ";
        out += format_complex(p.coeffs()[k]);
    }
    out += "]}";
    return out;
}

Polynomial polynomial_from_json(const std::string& text) {
    const json j = parse_or_throw(text, "polynomial");
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) {
        throw dimension_error("polynomial: expected an object with a coeffs array");
    }
    std::vector<cplx> c;
    c.reserve(j["coeffs"].size());
    for (const json& e : j["coeffs"]) c.push_back(complex_from_json(e, "polynomial"));
    return Polynomial(std::move(c));
}

std::string invariant_report_to_json(const InvariantReport& rep) {
    std::string out = "{\"matched\": ";
    out += rep.matched ? "true" : "false";
    out += ", \"worst_gap\": " + format_double(rep.worst_gap);
    out += ", \"witness\": ";
    if (rep.witness_word) {
        out += "{\"type\": \"word\", \"word\": \"" + *rep.witness_word + "\"}";
    } else if (rep.witness_poly) {
        out += "{\"type\": \"polynomial\", \"poly\": " + polynomial_to_json(*rep.witness_poly) +
               "}";
    } else if (rep.witness_sample) {
        out += "{\"type\": \"sample\", \"index\": " + std::to_string(*rep.witness_sample) + "}";
    } else {
        out += "null";
    }
    out += ", \"queries\": " + std::to_string(rep.queries) + "}";
    return out;
}

std::string similarity_report_to_json(const SimilarityReport& rep, bool include_witness) {
    std::string out = "{\"verdict\": \"";
    out += verdict_name(rep.verdict);
    out += "\", \"method\": \"" + rep.method + "\"";
    out += ", \"obstruction\": ";
    out += rep.obstruction ? "\"" + *rep.obstruction + "\"" : std::string("null");
    out += ", \"witness_residual\": ";
    out += rep.witness_residual ? format_double(*rep.witness_residual) : std::string("null");
    out += ", \"witness\": ";
    if (rep.witness && include_witness) {
        out += "{\"unitarity_residual\": " + format_double(rep.witness->unitarity_residual) +
               ", \"U\": " + matrix_to_json(rep.witness->U) + "}";
    } else {
        out += "null";
    }
    out += "}";
    return out;
}

std::string reconstruction_report_to_json(const ReconstructionReport& rep) {
    std::string out = "{\"lambda\": " + format_complex(rep.lambda);
    out += ", \"recovered\": " + matrix_to_json(rep.recovered);
    out += ", \"residuals\": [";
    for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < rep.residuals[i].size(); ++j) {
            if (j) out += ", ";
            out += format_double(rep.residuals[i][j]);
        }
        out += "]";
    }
    out += "], \"verification_gap\": " + format_double(rep.verification_gap);
    out += ", \"query_count\": " + std::to_string(rep.query_count) + "}";
    return out;
}

ProcessOracle::ProcessOracle(const std::string& command, std::size_t order) : order_(order) {
    if (order == 0) throw dimension_error("ProcessOracle: order must be positive");
    if (command.empty()) throw dimension_error("ProcessOracle: empty command");
    std::signal(SIGPIPE, SIG_IGN);  // a dead child must surface as a read error
    int to[2], from[2];
    if (pipe(to) != 0) throw oracle_error("ProcessOracle: pipe failed");
    if (pipe(from) != 0) {
        close(to[0]);
        close(to[1]);
        throw oracle_error("ProcessOracle: pipe failed");
    }
    pid_ = fork();
    if (pid_ < 0) {
        close(to[0]);
        close(to[1]);
        close(from[0]);
        close(from[1]);
        throw oracle_error("ProcessOracle: fork failed");
    }
    if (pid_ == 0) {
        dup2(to[0], STDIN_FILENO);
        dup2(from[1], STDOUT_FILENO);
        close(to[0]);
        close(to[1]);
        close(from[0]);
        close(from[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to[0]);
    close(from[1]);
    to_child_ = fdopen(to[1], "w");
    from_child_ = fdopen(from[0], "r");
    if (!to_child_ || !from_child_) {
        throw oracle_error("ProcessOracle: fdopen failed");
    }
}

ProcessOracle::~ProcessOracle() {
    if (to_child_) std::fclose(to_child_);
    if (from_child_) std::fclose(from_child_);
    if (pid_ > 0) waitpid(pid_, nullptr, 0);
}

double ProcessOracle::do_query(std::size_t i, const Polynomial& f) {
    std::string request = "{\"i\": " + std::to_string(i) +
                          ", \"poly\": " + polynomial_to_json(f) + "}";
    if (std::fprintf(to_child_, "%s\n", request.c_str()) < 0 || std::fflush(to_child_) != 0) {
        throw oracle_error("ProcessOracle: writing to the oracle process failed");
    }
    char buf[65536];
    if (!std::fgets(buf, sizeof(buf), from_child_)) {
        throw oracle_error("ProcessOracle: oracle process closed the pipe");
    }
    const json j = json::parse(buf, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("norm") || !j["norm"].is_number()) {
        throw oracle_error("ProcessOracle: malformed oracle response line");
    }
    return j["norm"].get<double>();
}

}  // namespace unicell
