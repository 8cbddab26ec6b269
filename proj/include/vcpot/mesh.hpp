#pragma once

#include "vcpot/exec.hpp"
#include "vcpot/grid.hpp"
#include "vcpot/realpoly.hpp"
#include "vcpot/versal.hpp"

#include <array>
#include <string>
#include <vector>

namespace vcpot {

using Vec3 = std::array<double, 3>;

// One connected piece of the level set {F = 0}. Facets are triangles for
// n = 3 and segments for n = 2 (stored in the same index array with the
// third index unused). Facet vertex order encodes the natural orientation:
// the facet normal (resp. the 90-degree-rotated tangent) is aligned with
// the analytic gradient of F at the facet centroid.
struct MeshComponent {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> facets;

    std::vector<Vec3> centroid;
    std::vector<Vec3> grad;
    std::vector<double> grad_norm;
    std::vector<double> area; // length for n = 2

    int depth = 1;
    int orientation_sign = +1;
    bool closed = true;

    double total_area() const;
    Vec3 min_vertex() const;
};

struct LevelSetMesh {
    int n = 3;
    GridSpec grid;
    std::vector<MeshComponent> components;
    bool clipped = false;
    bool nesting_computed = false;
    bool oriented = false;

    bool empty() const { return components.empty(); }
    std::size_t facet_count() const;
    double total_area() const;
};

struct RegularityReport {
    double min_grad = 0.0;
    bool clipped = false;
    bool empty = false;
    bool regular = false;
};

// Marching-simplex contour of {F = 0} over the grid restricted to the ball:
// squares split into four triangles around the cell center (n = 2), cubes
// into six Kuhn tetrahedra (n = 3), which keeps the mesh watertight without
// case-table ambiguities. Vertices are placed by linear interpolation along
// simplex edges; facets whose centroid falls outside the ball are dropped
// and flagged as clipping.
LevelSetMesh extract_level_set(const RealPoly& F, const GridSpec& grid,
                               exec::Mode mode = exec::Mode::Parallel);
LevelSetMesh extract_level_set(const VersalDeformation& F, const std::vector<double>& lambda,
                               const GridSpec& grid, exec::Mode mode = exec::Mode::Parallel);

// Nesting depth by ray-casting parity: depth = 1 + number of other (closed)
// components containing a sample point of the component. Degenerate ray hits
// retry with a different direction a bounded number of times.
void compute_nesting(LevelSetMesh& mesh);

// Arnold orientation: +1 for odd depth (natural orientation kept), -1 for
// even depth (reversed). Requires nesting depths; validates that no facet
// carries a vanishing gradient.
void orient_arnold(LevelSetMesh& mesh);

// x lies in D = {F <= 0} intersected with the ball of the given radius.
bool domain_indicator(const RealPoly& F, const double* x, int n, double radius);
bool domain_indicator(const VersalDeformation& F, const std::vector<double>& lambda,
                      const std::vector<double>& x, double radius);

RegularityReport check_regularity(const LevelSetMesh& mesh, double tol);

// Signed winding number of one oriented component around p: solid angle sum
// over triangles / 4pi for n = 3, turning sum / 2pi for n = 2. Orientation
// taken as natural times the given sign.
double component_winding(const MeshComponent& c, int n, const Vec3& p, int sign);

// Volume of the enclosed region by the divergence theorem over the natural
// (gradient-aligned) orientation; equals vol{F <= 0} for closed meshes.
double divergence_volume(const LevelSetMesh& mesh);

// OBJ text; one group per component named comp_<i>_depth_<d>_sign_<+1|-1>,
// facet vertex order encoding the Arnold orientation.
std::string mesh_to_obj(const LevelSetMesh& mesh);

} // namespace vcpot
