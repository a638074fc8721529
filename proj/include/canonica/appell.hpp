#pragma once

#include <optional>

#include <json.hpp>

#include "canonica/fields.hpp"
#include "canonica/symplectic.hpp"
#include "canonica/transforms.hpp"

namespace canonica {

enum class Direction { Forward, Inverse };

struct AppellSpec {
    Equation equation = Equation::pwe();
    double alpha = 1.0;  // in (-2, 2]
    double evol = 0.0;
    Direction direction = Direction::Forward;

    // Order actually applied: -alpha for the inverse map, folded into (-2, 2].
    double effective_alpha() const;
    void validate() const;
    nlohmann::json to_json() const;
    static AppellSpec from_json(const nlohmann::json& j);
};

// Closed-form Appell image of a solution. The result also carries its dual
// solution when the source has one.
FieldExpr appell_analytic(const FieldExpr& src, const AppellSpec& spec);
FieldExpr appell_analytic(const AnalyticField& src, const AppellSpec& spec);

// Applies the transform to the source (data at evol 0) and then propagates to
// spec.evol. `mid` is the grid of the intermediate transformed source; it
// defaults to the source grid.
SampledField appell_numeric(const SampledField& source, const AppellSpec& spec, const Grid1D& out_grid,
                            const QuadratureConfig& cfg = {}, std::optional<Grid1D> mid = std::nullopt);

// Matrix of the map, and the same matrix rebuilt from the stages of the numeric path.
SympMat2 appell_matrix(const AppellSpec& spec);
SympMat2 numeric_path_matrix(const AppellSpec& spec);

struct SelfAppellMode {
    enum class Kind { HG, LG } kind = Kind::HG;
    int n = 0;
    int m = 0;
};

// Eigenvalue of the fractional map on a standard mode.
cplx self_appell_eigenvalue(const SelfAppellMode& mode, double alpha);
double self_appell_eigencheck(const SelfAppellMode& mode, double alpha, double zeta, const Grid1D& grid);

}  // namespace canonica
