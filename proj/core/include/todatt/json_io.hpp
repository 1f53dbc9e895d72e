#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "todatt/classify.hpp"
#include "todatt/identities.hpp"
#include "todatt/solver.hpp"
#include "todatt/walgebra.hpp"

namespace todatt {

using Json = nlohmann::ordered_json;

/// Malformed or out-of-schema JSON / CSV input.
class SchemaError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// {"n": int, "eta": [[{"re": .., "im": ..}, ..], ..], "g": [...], "phi": [...]}
Json to_json(const FrameStructure& s);
FrameStructure frame_from_json(const Json& j);

Json to_json(const ValidityReport& r);
Json to_json(const ClassificationReport& r);
Json to_json(int n, const NormalizationResult& r);
Json to_json(const ReducedSystem& r);
Json to_json(const MinimalModelData& d);
Json to_json(const std::vector<IdentityResult>& results);

AsymmetryClass asymmetry_class_from_json(const Json& j);

/// {"n": .., "l": ..}
std::pair<int, int> reduce_request_from_json(const Json& j);

/// {"n": .., "l": .., "m": [..], "grid": {"x_min", "x_max", "points"},
///  "opts": {"tol", "max_iter", "damping", "max_halvings", "left": "dirichlet"|"slope"}}
struct SolveRequest {
    AsymptoticData data;
    Grid grid;
    SolverOptions opts;
};
SolveRequest solve_request_from_json(const Json& j);
Json to_json(const SolveRequest& r);

/// Either a single request object, an array of them, or {"records": [...]}.
std::vector<SolveRequest> solve_batch_from_json(const Json& j);

/// Residual, extracted m_hat and symmetry diagnostics of a converged solve.
Json solve_summary(const SolveRequest& request, const RadialSolution& sol, int window);

/// m entries may be JSON integers, "p/q" strings, or decimals (converted via
/// rational_from_double). Optional "Q" overrides the minimal choice.
struct CeffRequest {
    RationalAsymptoticData data;
    std::optional<BigInt> q;
};
CeffRequest ceff_request_from_json(const Json& j);

/// Header `x,w0,...,wn`; every value printed with 17 significant digits.
void write_solution_csv(std::ostream& out, const RadialSolution& sol);
/// Reads the CSV written above; n is inferred from the header, l is left 0.
RadialSolution read_solution_csv(std::istream& in);

/// Parses text that is either inline JSON or a path to a JSON file.
Json load_json_argument(const std::string& path_or_json);

}  // namespace todatt
