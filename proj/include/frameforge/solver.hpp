#pragma once

#include "frameforge/loads.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <array>
#include <vector>

namespace frameforge {

struct NodeDisplacement {
    int node = 0;
    double ux = 0.0;  // m
    double uy = 0.0;  // m
    double rz = 0.0;  // rad, counterclockwise positive
};

struct Reaction {
    int node = 0;
    double rx = 0.0;  // kN
    double ry = 0.0;  // kN
    double mz = 0.0;  // kN*m
};

/// Forces the nodes exert on the member ends, in member-local axes
/// (x along i -> j, y rotated +90 deg): N_i, V_i, M_i, N_j, V_j, M_j.
struct MemberEndForces {
    int element = 0;
    std::array<double, 6> local{};
};

/// Internal forces sampled along a member. Sign convention, on the cut face
/// whose outward normal is +local x: axial N (tension positive), shear V in
/// +local y, moment M counterclockwise (sagging positive). dM/dx = -V.
struct MemberDiagram {
    int element = 0;
    std::vector<double> x;  // distance from node i [m]
    std::vector<double> axial;
    std::vector<double> shear;
    std::vector<double> moment;
};

struct AnalysisResult {
    std::vector<NodeDisplacement> displacements;  // node-id order
    std::vector<Reaction> reactions;              // fixed nodes only
    std::vector<MemberEndForces> member_end_forces;
    std::vector<MemberDiagram> diagrams;

    [[nodiscard]] const NodeDisplacement& displacement(int node) const;
    [[nodiscard]] const MemberEndForces& end_forces(int element) const;
};

inline constexpr int kDefaultStations = 21;

/// 6x6 Euler-Bernoulli beam-column stiffness in local axes.
Eigen::Matrix<double, 6, 6> local_stiffness(double E, double A, double I, double L);

/// Local -> global rotation blocks for a member at angle (cos, sin).
Eigen::Matrix<double, 6, 6> rotation(double c, double s);

/// Fixed-end forces (forces on the member ends with both ends clamped) for a
/// uniform local-y load q over length L.
Eigen::Matrix<double, 6, 1> fixed_end_forces(double q, double L);

/// Global stiffness, 3 DOFs per node in node-id order, assembled in
/// element-id order.
Eigen::MatrixXd assemble_global_stiffness(const LoadedModel& model);

/// Linear static analysis. Throws SingularSystem (no path to a support,
/// mechanism) or NumericalFailure (non-finite results).
AnalysisResult solve_static(const LoadedModel& model, int stations = kDefaultStations);

/// Internal-force diagrams at `stations` equally spaced points (>= 2) per member.
std::vector<MemberDiagram> sample_diagrams(const LoadedModel& model, const AnalysisResult& result,
                                           int stations = kDefaultStations);

struct EquilibriumResidual {
    double fx = 0.0;
    double fy = 0.0;
    double mz = 0.0;          // about the global origin
    double force_scale = 0.0;  // sum of applied load magnitudes
    double moment_scale = 0.0;

    /// max(|fx|, |fy|) / force_scale and |mz| / moment_scale, whichever is
    /// larger; 0 when nothing is loaded.
    [[nodiscard]] double relative() const noexcept;
};

/// Sum of reactions, nodal loads and member-load resultants.
EquilibriumResidual equilibrium_residual(const LoadedModel& model, const AnalysisResult& result);

nlohmann::json to_json(const AnalysisResult& result);
/// Accepts documents without member_end_forces/diagrams (external runners).
AnalysisResult result_from_json(const nlohmann::json& doc);

}  // namespace frameforge
