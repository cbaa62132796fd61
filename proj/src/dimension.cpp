#include "lupoly/dimension.hpp"

#include "lupoly/errors.hpp"

namespace lupoly {

std::string to_string(DimFormula formula) {
    switch (formula) {
    case DimFormula::Interior:
        return "interior";
    case DimFormula::Case1Interior:
        return "case1+interior";
    case DimFormula::Case2:
        return "case2";
    case DimFormula::Case3:
        return "case3";
    case DimFormula::ThreeQubitBoundary:
        return "three-qubit-boundary";
    case DimFormula::DegenerateProduct:
        return "degenerate-product";
    case DimFormula::Composed:
        return "composed";
    }
    return "unknown";
}

std::string to_string(Provenance status) {
    return status == Provenance::Exact ? "paper-exact" : "composed";
}

long long generic_dimension(int num_qubits) {
    if (num_qubits < 0 || num_qubits > 60) throw InvalidInput("generic_dimension: L out of range");
    return (1LL << (num_qubits + 1)) - 4LL * num_qubits - 2;
}

DimReport dim_reduced_space(const StratumClass& cls) {
    if (!cls.member) throw InvalidInput("dimension requested for a point outside the polytope");
    const int residual = cls.residual_L;
    DimReport report;

    auto finish = [&](long long dim) {
        if (dim < 0) {
            throw InvariantViolation("negative reduced-space dimension " + std::to_string(dim) +
                                     " at residual L'=" + std::to_string(residual));
        }
        report.dim_M = static_cast<int>(dim);
        report.num_invariants = report.dim_M + cls.num_qubits;
        return report;
    };

    if (cls.k_half > 0) {
        report.notes.push_back("stripped " + std::to_string(cls.k_half) +
                               " separable qubit(s); residual system has L'=" + std::to_string(residual));
    }

    if (residual <= 2) {
        report.formula = DimFormula::DegenerateProduct;
        report.status = Provenance::Composed;
        report.notes.push_back(residual == 2 ? "two-qubit residual fiber is a single orbit (Schmidt form)"
                                             : "residual state is fully separable");
        return finish(0);
    }

    if (!cls.tight_walls.empty()) {
        report.formula = DimFormula::Case2;
        report.status = Provenance::Exact;
        report.notes.push_back("tight wall: fiber is a single K-orbit");
        if (cls.k_zero > 0) {
            report.notes.push_back("wall point with degenerate spectra (lambda=0); single-orbit result "
                                   "applied as stated for all wall points");
        }
        return finish(0);
    }

    if (cls.k_zero == 0) {
        report.formula = cls.k_half == 0 ? DimFormula::Interior : DimFormula::Case1Interior;
        report.status = Provenance::Exact;
        return finish(generic_dimension(residual));
    }

    if (residual >= 4) {
        report.formula = cls.k_half == 0 ? DimFormula::Case3 : DimFormula::Composed;
        report.status = cls.k_half == 0 ? Provenance::Exact : Provenance::Composed;
        report.notes.push_back(std::to_string(cls.k_zero) + " maximally mixed reduction(s): generic value - " +
                               std::to_string(2 * cls.k_zero));
        return finish(generic_dimension(residual) - 2LL * cls.k_zero);
    }

    // residual == 3 with at least one maximally mixed reduction
    report.formula = DimFormula::ThreeQubitBoundary;
    report.status = cls.k_half == 0 ? Provenance::Exact : Provenance::Composed;
    report.notes.push_back("three-qubit boundary point");
    return finish(0);
}

} // namespace lupoly
