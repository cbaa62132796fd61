#pragma once

#include "lupoly/polytope.hpp"

#include <string>
#include <vector>

namespace lupoly {

enum class DimFormula {
    Interior,            // 2^(L+1) - 4L - 2
    Case1Interior,       // same formula on the residual system after stripping lambda = 1/2
    Case2,               // tight wall: single orbit
    Case3,               // k maximally mixed reductions: generic value - 2k
    ThreeQubitBoundary,  // residual system of three qubits on its boundary
    DegenerateProduct,   // residual system of at most two qubits
    Composed,            // stripping and zeros combined at L' >= 4
};

enum class Provenance { Exact, Composed };

std::string to_string(DimFormula formula);
std::string to_string(Provenance status);

struct DimReport {
    int dim_M = 0;
    int num_invariants = 0;  // dim_M + L
    DimFormula formula = DimFormula::Interior;
    Provenance status = Provenance::Exact;
    std::vector<std::string> notes;
};

// Dimension of the reduced space over a generic interior point, 2^(L+1) - 4L - 2.
long long generic_dimension(int num_qubits);

// Top-stratum dimension of the reduced space for a classified member point.
DimReport dim_reduced_space(const StratumClass& cls);

} // namespace lupoly
