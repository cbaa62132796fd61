#pragma once

#include "lupoly/qstate.hpp"
#include "lupoly/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace lupoly {

inline constexpr double kDefaultTolerance = 1e-9;

enum class ConstraintKind {
    Wall,        // (1/2 - lambda_l) <= sum_{j != l} (1/2 - lambda_j)
    LowerBound,  // 0 <= lambda_l
    UpperBound,  // lambda_l <= 1/2
};

std::string to_string(ConstraintKind kind);

struct Constraint {
    ConstraintKind kind;
    int index;  // 0-based qubit the constraint is attached to

    // Row form a . lambda = b of the constraint turned into an equality.
    void equality_row(int num_qubits, std::vector<Rational>& coefficients, Rational& rhs) const;
    std::string describe(int num_qubits) const;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// The 3L inequalities cutting out the spectra polytope, ordered as L walls,
/// L lower bounds, L upper bounds.
class PolytopeModel {
public:
    explicit PolytopeModel(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    // Non-negative iff the inequality holds.
    double slack(const Constraint& c, std::span<const double> lambdas) const;
    Rational slack(const Constraint& c, std::span<const Rational> lambdas) const;

private:
    int num_qubits_;
    std::vector<Constraint> constraints_;
};

struct Violation {
    Constraint constraint;
    double slack;  // negative
};

struct MembershipResult {
    bool member = false;
    std::vector<Violation> violated;
};

// A constraint counts as satisfied when its slack is >= -tol.
MembershipResult membership(std::span<const double> lambdas, double tol = kDefaultTolerance);
MembershipResult membership(std::span<const Rational> lambdas);

/// Boundary-stratum classification of a member point.
///
/// Stripping lambda_l = 1/2 coordinates comes first; walls and zeros are then
/// detected in the residual system of the remaining qubits only. All index
/// lists are 0-based and refer to the original coordinates.
struct StratumClass {
    bool member = false;
    std::vector<Violation> violations;
    int num_qubits = 0;
    int k_half = 0;
    std::vector<int> half_indices;
    int residual_L = 0;
    std::vector<int> residual_indices;
    bool degenerate = false;  // residual_L <= 2
    std::vector<int> tight_walls;
    int k_zero = 0;
    std::vector<int> zero_indices;
    std::vector<std::string> trail;

    bool interior() const { return k_half == 0 && tight_walls.empty() && k_zero == 0; }

    // Record for a rejected point: only `violations` is populated.
    static StratumClass rejected(int num_qubits, MembershipResult result);
};

// Throws InvalidInput for non-finite coordinates or non-member points.
StratumClass classify(std::span<const double> lambdas, double tol = kDefaultTolerance);
StratumClass classify(std::span<const Rational> lambdas);
inline StratumClass classify(const SpectraPoint& point, double tol = kDefaultTolerance) {
    return classify(std::span<const double>(point.lambdas), tol);
}

struct Vertex {
    std::string label;
    std::vector<Rational> lambdas;  // each 0 or 1/2

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct VertexList {
    int num_qubits = 0;
    std::vector<Vertex> vertices;
};

// Label for a {0, 1/2}-vertex: v_SEP, v_GHZ, v_j (single lambda = 1/2) and, for
// L = 4, v_B1..v_B6 as in the standard four-qubit table. Other vertices of
// larger systems are named by their zero set, e.g. v_Z(1,2) for lambda_1 = lambda_2 = 0.
std::string vertex_label(std::span<const Rational> lambdas);

// Closed-form vertex set: lambda_l in {0, 1/2} with the number of zeros in
// {0, 2, 3, ..., L}. Requires 1 <= L <= 20.
VertexList vertices(int num_qubits);

// Brute force over all L-subsets of the 3L constraints, solved exactly.
// Requires 2 <= L <= 8. The work is split across `threads` workers (0 = hardware).
VertexList vertices_oracle(int num_qubits, unsigned threads = 0);

// Set equality of two vertex lists by exact coordinates.
bool same_vertex_set(const VertexList& a, const VertexList& b);

struct Facet {
    Constraint constraint;
    std::string type;      // "wall", "lambda=0" or "lambda=1/2"
    std::string equality;  // human readable, 1-based
    std::vector<std::string> incident_vertices;
};

// Constraints whose tight vertex set spans an (L-1)-dimensional face. For
// L >= 4 this is every one of the 3L constraints; L = 3 is reported as found.
std::vector<Facet> facets(int num_qubits);

} // namespace lupoly
