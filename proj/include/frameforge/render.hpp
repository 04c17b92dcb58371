#pragma once

#include "frameforge/loads.hpp"
#include "frameforge/solver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace frameforge {

struct RenderOptions {
    double deformed_fraction = 0.10;  // max displacement drawn as this share of the bbox diagonal
    double diagram_fraction = 0.10;   // max |N|, |V| or |M| drawn as this share of the bbox diagonal
    int deformed_points = 11;         // samples per member on the deformed shape
    double width_px = 800.0;
};

/// Named SVG documents: geometry, loads, and with a result also deformed,
/// axial, shear, moment. World y points up; documents flip it.
///
/// Markers: nodes are <circle class="node">, members <line class="member">,
/// supports <polygon class="support">, nodal loads <line class="load-point">,
/// member loads <line class="load-distributed">, deformed members
/// <polyline class="deformed">, diagrams <polygon class="diagram">.
/// Moment is drawn on the tension side (offset -M along local y); axial and
/// shear are offset +N, +V along local y.
std::vector<std::pair<std::string, std::string>> render_svg(const LoadedModel& model,
                                                            const AnalysisResult* result = nullptr,
                                                            const RenderOptions& options = {});

/// Length factor applied to displacements in the deformed view (0 when
/// nothing moves).
double deformed_scale(const LoadedModel& model, const AnalysisResult& result, double fraction = 0.10);

/// Bounding-box diagonal of the undeformed geometry (at least 1 m).
double model_diagonal(const LoadedModel& model);

}  // namespace frameforge
