#pragma once

#include <cstdio>
#include <string>

#include "unicell/cmatrix.hpp"
#include "unicell/invariants.hpp"
#include "unicell/polynomial.hpp"
#include "unicell/reconstruct.hpp"
#include "unicell/similarity.hpp"

#include <sys/types.h>

namespace unicell {

// Fixed 17-significant-digit formatting: enough to round-trip any double,
// identical across runs.
std::string format_double(double v);
std::string format_complex(cplx v);  // [re, im]

// Matrix wire format: {"n": int, "entries": [[[re, im], ...], ...]},
// row-major.
std::string matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const std::string& text);
CMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CMatrix& a);

// Polynomial wire format: {"coeffs": [[re, im], ...]}, ascending powers.
std::string polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const std::string& text);

std::string invariant_report_to_json(const InvariantReport& rep);
std::string similarity_report_to_json(const SimilarityReport& rep, bool include_witness = true);
std::string reconstruction_report_to_json(const ReconstructionReport& rep);

// Oracle adapter driving an external program over pipes, one JSON object
// per line: request {"i": int, "poly": {"coeffs": ...}}, response
// {"norm": float}.  The command is run through the shell; the protocol
// carries no order information, so the order is supplied here.
class ProcessOracle final : public NormOracle {
  public:
    ProcessOracle(const std::string& command, std::size_t order);
    ~ProcessOracle() override;

    ProcessOracle(const ProcessOracle&) = delete;
    ProcessOracle& operator=(const ProcessOracle&) = delete;

    std::size_t order() const override { return order_; }

  protected:
    double do_query(std::size_t i, const Polynomial& f) override;

  private:
    std::size_t order_;
    pid_t pid_ = -1;
    std::FILE* to_child_ = nullptr;
    std::FILE* from_child_ = nullptr;
};

}  // namespace unicell
