#include "lupoly/polytope.hpp"

#include "lupoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <thread>

namespace lupoly {

namespace {

const Rational kHalf(1, 2);

template <class T>
T half() {
    if constexpr (std::is_same_v<T, Rational>) {
        return kHalf;
    } else {
        return T(0.5);
    }
}

template <class T>
T constraint_slack(const Constraint& c, std::span<const T> lambdas) {
    const auto l = static_cast<std::size_t>(c.index);
    switch (c.kind) {
    case ConstraintKind::Wall: {
        T rest = T(0);
        for (std::size_t j = 0; j < lambdas.size(); ++j) {
            if (j != l) rest += half<T>() - lambdas[j];
        }
        return rest - (half<T>() - lambdas[l]);
    }
    case ConstraintKind::LowerBound:
        return lambdas[l];
    case ConstraintKind::UpperBound:
        return half<T>() - lambdas[l];
    }
    throw InvariantViolation("unknown constraint kind");
}

template <class T>
MembershipResult membership_impl(std::span<const T> lambdas, const T& tol) {
    if (lambdas.empty()) throw InvalidInput("spectra point needs at least one coordinate");
    if constexpr (std::is_same_v<T, double>) {
        for (double v : lambdas) {
            if (!std::isfinite(v)) throw InvalidInput("spectra coordinates must be finite");
        }
    }
    const PolytopeModel model(static_cast<int>(lambdas.size()));
    MembershipResult result;
    for (const auto& c : model.constraints()) {
        const T s = constraint_slack(c, lambdas);
        if (s < -tol) {
            double slack_value;
            if constexpr (std::is_same_v<T, Rational>) {
                slack_value = to_double(s);
            } else {
                slack_value = s;
            }
            result.violated.push_back({c, slack_value});
        }
    }
    result.member = result.violated.empty();
    return result;
}

std::string join_indices(const std::vector<int>& idx) {
    std::string out = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(idx[i] + 1);
    }
    return out + "}";
}

std::string describe_violations(const MembershipResult& result, int num_qubits) {
    std::string out;
    for (const auto& v : result.violated) {
        if (!out.empty()) out += "; ";
        out += v.constraint.describe(num_qubits) + " (slack " + std::to_string(v.slack) + ")";
    }
    return out;
}

template <class T>
StratumClass classify_impl(std::span<const T> lambdas, const T& tol) {
    const int num_qubits = static_cast<int>(lambdas.size());
    auto member = membership_impl(lambdas, tol);
    if (!member.member) {
        throw InvalidInput("point is outside the polytope: " + describe_violations(member, num_qubits));
    }

    StratumClass cls;
    cls.member = true;
    cls.num_qubits = num_qubits;

    for (int l = 0; l < num_qubits; ++l) {
        if (lambdas[static_cast<std::size_t>(l)] >= half<T>() - tol) {
            cls.half_indices.push_back(l);
        } else {
            cls.residual_indices.push_back(l);
        }
    }
    cls.k_half = static_cast<int>(cls.half_indices.size());
    cls.residual_L = static_cast<int>(cls.residual_indices.size());
    cls.trail.push_back("strip lambda=1/2 at " + join_indices(cls.half_indices) + ": k_half=" +
                        std::to_string(cls.k_half) + ", residual L'=" + std::to_string(cls.residual_L));

    if (cls.residual_L <= 2) {
        cls.degenerate = true;
        cls.trail.push_back("residual system has L'=" + std::to_string(cls.residual_L) +
                            " <= 2 qubits: degenerate");
    }

    // Stripped coordinates contribute 1/2 - 1/2 = 0 to every residual wall sum.
    for (int l : cls.residual_indices) {
        T rest = T(0);
        for (int j : cls.residual_indices) {
            if (j != l) rest += half<T>() - lambdas[static_cast<std::size_t>(j)];
        }
        const T slack = rest - (half<T>() - lambdas[static_cast<std::size_t>(l)]);
        if (slack <= tol) cls.tight_walls.push_back(l);
    }
    cls.trail.push_back("tight residual walls at " + join_indices(cls.tight_walls));

    for (int l : cls.residual_indices) {
        if (lambdas[static_cast<std::size_t>(l)] <= tol) cls.zero_indices.push_back(l);
    }
    cls.k_zero = static_cast<int>(cls.zero_indices.size());
    cls.trail.push_back("residual lambda=0 at " + join_indices(cls.zero_indices) + ": k_zero=" +
                        std::to_string(cls.k_zero));
    return cls;
}

std::vector<Rational> vertex_from_zero_mask(int num_qubits, std::uint32_t zero_mask) {
    std::vector<Rational> lambdas(static_cast<std::size_t>(num_qubits), kHalf);
    for (int l = 0; l < num_qubits; ++l) {
        if (zero_mask & (1u << l)) lambdas[static_cast<std::size_t>(l)] = Rational(0);
    }
    return lambdas;
}

// Zero sets of a given size in lexicographic order of their sorted indices.
void zero_sets(int n, int size, int start, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == size) {
        out.push_back(current);
        return;
    }
    for (int i = start; i < n; ++i) {
        current.push_back(i);
        zero_sets(n, size, i + 1, current, out);
        current.pop_back();
    }
}

std::vector<Rational> affine_difference(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

} // namespace

std::string to_string(ConstraintKind kind) {
    switch (kind) {
    case ConstraintKind::Wall:
        return "wall";
    case ConstraintKind::LowerBound:
        return "lambda=0";
    case ConstraintKind::UpperBound:
        return "lambda=1/2";
    }
    return "unknown";
}

void Constraint::equality_row(int num_qubits, std::vector<Rational>& coefficients, Rational& rhs) const {
    coefficients.assign(static_cast<std::size_t>(num_qubits), Rational(0));
    const auto l = static_cast<std::size_t>(index);
    switch (kind) {
    case ConstraintKind::Wall:
        // -lambda_l + sum_{j != l} lambda_j = (L - 2) / 2
        for (auto& c : coefficients) c = 1;
        coefficients[l] = -1;
        rhs = Rational(num_qubits - 2, 2);
        break;
    case ConstraintKind::LowerBound:
        coefficients[l] = 1;
        rhs = 0;
        break;
    case ConstraintKind::UpperBound:
        coefficients[l] = 1;
        rhs = kHalf;
        break;
    }
}

std::string Constraint::describe(int num_qubits) const {
    const std::string l = std::to_string(index + 1);
    switch (kind) {
    case ConstraintKind::Wall:
        return "wall " + l + ": (1/2 - lambda_" + l + ") <= sum_{j!=" + l + "} (1/2 - lambda_j) [L=" +
               std::to_string(num_qubits) + "]";
    case ConstraintKind::LowerBound:
        return "lower bound: lambda_" + l + " >= 0";
    case ConstraintKind::UpperBound:
        return "upper bound: lambda_" + l + " <= 1/2";
    }
    return "unknown";
}

PolytopeModel::PolytopeModel(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw InvalidInput("polytope needs L >= 1");
    for (auto kind : {ConstraintKind::Wall, ConstraintKind::LowerBound, ConstraintKind::UpperBound}) {
        for (int l = 0; l < num_qubits; ++l) constraints_.push_back({kind, l});
    }
}

double PolytopeModel::slack(const Constraint& c, std::span<const double> lambdas) const {
    return constraint_slack(c, lambdas);
}

Rational PolytopeModel::slack(const Constraint& c, std::span<const Rational> lambdas) const {
    return constraint_slack(c, lambdas);
}

MembershipResult membership(std::span<const double> lambdas, double tol) {
    if (!(tol >= 0.0)) throw InvalidInput("tolerance must be non-negative");
    return membership_impl(lambdas, tol);
}

MembershipResult membership(std::span<const Rational> lambdas) {
    return membership_impl(lambdas, Rational(0));
}

StratumClass StratumClass::rejected(int num_qubits, MembershipResult result) {
    StratumClass cls;
    cls.member = false;
    cls.num_qubits = num_qubits;
    cls.violations = std::move(result.violated);
    return cls;
}

StratumClass classify(std::span<const double> lambdas, double tol) {
    if (!(tol >= 0.0)) throw InvalidInput("tolerance must be non-negative");
    return classify_impl(lambdas, tol);
}

StratumClass classify(std::span<const Rational> lambdas) {
    return classify_impl(lambdas, Rational(0));
}

std::string vertex_label(std::span<const Rational> lambdas) {
    const int n = static_cast<int>(lambdas.size());
    std::vector<int> zeros;
    std::vector<int> halves;
    for (int l = 0; l < n; ++l) {
        const auto& v = lambdas[static_cast<std::size_t>(l)];
        if (v == 0) {
            zeros.push_back(l);
        } else if (v == kHalf) {
            halves.push_back(l);
        } else {
            throw InvalidInput("vertex coordinates must be 0 or 1/2");
        }
    }
    if (zeros.empty()) return "v_SEP";
    if (halves.empty()) return "v_GHZ";
    if (halves.size() == 1 && n >= 3) return "v_" + std::to_string(halves.front() + 1);
    if (n == 4 && zeros.size() == 2) {
        std::vector<std::vector<int>> pairs;
        std::vector<int> current;
        zero_sets(4, 2, 0, current, pairs);
        const auto it = std::find(pairs.begin(), pairs.end(), zeros);
        return "v_B" + std::to_string(std::distance(pairs.begin(), it) + 1);
    }
    std::string label = "v_Z(";
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (i) label += ",";
        label += std::to_string(zeros[i] + 1);
    }
    return label + ")";
}

VertexList vertices(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 20) throw InvalidInput("vertices: L must be in 1..20");
    VertexList list;
    list.num_qubits = num_qubits;
    for (int zero_count = 0; zero_count <= num_qubits; ++zero_count) {
        if (zero_count == 1) continue;  // a single p_i = 1/2 contradicts the wall inequality
        std::vector<std::vector<int>> sets;
        std::vector<int> current;
        zero_sets(num_qubits, zero_count, 0, current, sets);
        for (const auto& zs : sets) {
            std::uint32_t mask = 0;
            for (int z : zs) mask |= 1u << z;
            auto lambdas = vertex_from_zero_mask(num_qubits, mask);
            list.vertices.push_back({vertex_label(lambdas), std::move(lambdas)});
        }
    }
    return list;
}

VertexList vertices_oracle(int num_qubits, unsigned threads) {
    if (num_qubits < 2 || num_qubits > 8) throw InvalidInput("vertices_oracle: L must be in 2..8");
    const PolytopeModel model(num_qubits);
    const auto& cons = model.constraints();
    const int m = static_cast<int>(cons.size());

    std::vector<std::vector<Rational>> rows(cons.size());
    std::vector<Rational> rhs(cons.size());
    for (std::size_t i = 0; i < cons.size(); ++i) cons[i].equality_row(num_qubits, rows[i], rhs[i]);

    // Subsets are enumerated by their first element; each worker takes a
    // strided share of first elements.
    auto work = [&](int first_begin, int stride) {
        std::set<std::vector<Rational>> found;
        std::vector<int> chosen;
        std::vector<Rational> solution;
        auto recurse = [&](auto&& self, int start) -> void {
            if (static_cast<int>(chosen.size()) == num_qubits) {
                std::vector<std::vector<Rational>> a;
                std::vector<Rational> b;
                for (int c : chosen) {
                    a.push_back(rows[static_cast<std::size_t>(c)]);
                    b.push_back(rhs[static_cast<std::size_t>(c)]);
                }
                if (!solve_exact(std::move(a), std::move(b), solution)) return;
                for (const auto& c : cons) {
                    if (model.slack(c, std::span<const Rational>(solution)) < 0) return;
                }
                found.insert(solution);
                return;
            }
            for (int i = start; i < m; ++i) {
                chosen.push_back(i);
                self(self, i + 1);
                chosen.pop_back();
            }
        };
        for (int first = first_begin; first < m; first += stride) {
            chosen.assign(1, first);
            recurse(recurse, first + 1);
        }
        return found;
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(m));
    std::vector<std::future<std::set<std::vector<Rational>>>> futures;
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, work, static_cast<int>(w), static_cast<int>(workers)));
    }
    std::set<std::vector<Rational>> merged;
    for (auto& f : futures) merged.merge(f.get());

    VertexList list;
    list.num_qubits = num_qubits;
    for (const auto& v : merged) {
        for (const auto& x : v) {
            if (x != 0 && x != kHalf) {
                throw InvariantViolation("oracle produced a vertex with coordinate " + to_string(x));
            }
        }
        list.vertices.push_back({vertex_label(v), v});
    }
    return list;
}

bool same_vertex_set(const VertexList& a, const VertexList& b) {
    if (a.num_qubits != b.num_qubits) return false;
    std::set<std::vector<Rational>> sa, sb;
    for (const auto& v : a.vertices) sa.insert(v.lambdas);
    for (const auto& v : b.vertices) sb.insert(v.lambdas);
    return sa == sb && sa.size() == a.vertices.size() && sb.size() == b.vertices.size();
}

std::vector<Facet> facets(int num_qubits) {
    if (num_qubits < 3 || num_qubits > 20) throw InvalidInput("facets: L must be in 3..20");
    const PolytopeModel model(num_qubits);
    const VertexList verts = vertices(num_qubits);
    std::vector<Facet> out;
    for (const auto& c : model.constraints()) {
        std::vector<const Vertex*> incident;
        for (const auto& v : verts.vertices) {
            if (model.slack(c, std::span<const Rational>(v.lambdas)) == 0) incident.push_back(&v);
        }
        if (incident.empty()) continue;
        std::vector<std::vector<Rational>> diffs;
        for (std::size_t i = 1; i < incident.size(); ++i) {
            diffs.push_back(affine_difference(incident[i]->lambdas, incident[0]->lambdas));
        }
        if (static_cast<int>(exact_rank(std::move(diffs))) != num_qubits - 1) continue;

        Facet f{c, to_string(c.kind), {}, {}};
        const std::string l = std::to_string(c.index + 1);
        switch (c.kind) {
        case ConstraintKind::Wall:
            f.equality = "-lambda_" + l + " + sum_{j!=" + l + "} lambda_j = " +
                         to_string(Rational(num_qubits - 2, 2));
            break;
        case ConstraintKind::LowerBound:
            f.equality = "lambda_" + l + " = 0";
            break;
        case ConstraintKind::UpperBound:
            f.equality = "lambda_" + l + " = 1/2";
            break;
        }
        for (const auto* v : incident) f.incident_vertices.push_back(v->label);
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace lupoly
