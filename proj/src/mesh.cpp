#include "vcpot/mesh.hpp"

#include "vcpot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace vcpot {

namespace {

double norm2(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int size) : parent(static_cast<size_t>(size)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Edge of the simplex decomposition identified by its two endpoint ids
// (global grid-point ids, or synthetic cell-center ids for n = 2), sorted.
std::uint64_t edge_key(std::int64_t a, std::int64_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

struct Builder {
    const RealPoly& F;
    const GridSpec& grid;
    int n;
    int P;                       // points per axis
    std::vector<double> values;  // grid point values
    std::int64_t center_id_base; // synthetic ids for n = 2 cell centers

    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> facets; // [a,b,c] or [a,b,-1]
    std::unordered_map<std::uint64_t, int> vertex_of_edge;
    bool dropped_facets = false;
    bool boundary_touch = false;

    explicit Builder(const RealPoly& f, const GridSpec& g, exec::Mode mode)
        : F(f), grid(g), n(g.n), P(g.points_per_axis()) {
        values.resize(static_cast<size_t>(grid.point_count()));
        exec::parallel_fill(mode, grid.point_count(), [&](std::int64_t idx) {
            double x[3] = {0, 0, 0};
            std::int64_t r = idx;
            for (int i = n - 1; i >= 0; --i) {
                x[i] = grid.point_coord(static_cast<int>(r % P));
                r /= P;
            }
            values[static_cast<size_t>(idx)] = F(x);
        });
        center_id_base = grid.point_count();
    }

    std::int64_t point_id(const int* k) const {
        std::int64_t id = 0;
        for (int i = 0; i < n; ++i) id = id * P + k[i];
        return id;
    }
    Vec3 point_coords(std::int64_t id) const {
        Vec3 x{0, 0, 0};
        for (int i = n - 1; i >= 0; --i) {
            x[static_cast<size_t>(i)] = grid.point_coord(static_cast<int>(id % P));
            id /= P;
        }
        return x;
    }

    double value_of(std::int64_t id, std::int64_t cell_idx) const {
        if (id >= center_id_base) {
            double x[3] = {0, 0, 0};
            grid.cell_center(cell_idx, x);
            return F(x);
        }
        return values[static_cast<size_t>(id)];
    }
    Vec3 coords_of(std::int64_t id, std::int64_t cell_idx) const {
        if (id >= center_id_base) {
            double x[3] = {0, 0, 0};
            grid.cell_center(cell_idx, x);
            return {x[0], x[1], x[2]};
        }
        return point_coords(id);
    }

    // Vertex on the sign-change edge (a, b); created on first use.
    int crossing_vertex(std::int64_t a, std::int64_t b, std::int64_t cell_idx) {
        std::int64_t lo = std::min(a, b), hi = std::max(a, b);
        const std::uint64_t key = edge_key(lo, hi);
        auto it = vertex_of_edge.find(key);
        if (it != vertex_of_edge.end()) return it->second;
        const double fa = value_of(lo, cell_idx), fb = value_of(hi, cell_idx);
        const double t = fa / (fa - fb);
        const Vec3 pa = coords_of(lo, cell_idx), pb = coords_of(hi, cell_idx);
        Vec3 v{pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]),
               pa[2] + t * (pb[2] - pa[2])};
        const int idx = static_cast<int>(verts.size());
        verts.push_back(v);
        vertex_of_edge.emplace(key, idx);
        return idx;
    }

    // Contour one simplex given point ids and their signs (positive: F > 0).
    void emit_simplex(const std::int64_t* ids, int count, std::int64_t cell_idx) {
        int pos[4], neg[4], np = 0, nn = 0;
        for (int i = 0; i < count; ++i) {
            if (value_of(ids[i], cell_idx) > 0.0)
                pos[np++] = i;
            else
                neg[nn++] = i;
        }
        if (np == 0 || nn == 0) return;
        if (n == 2) {
            // Triangle: exactly one vertex isolated on its side.
            const int lone = (np == 1) ? pos[0] : neg[0];
            const int o1 = (lone + 1) % 3, o2 = (lone + 2) % 3;
            const int va = crossing_vertex(ids[lone], ids[o1], cell_idx);
            const int vb = crossing_vertex(ids[lone], ids[o2], cell_idx);
            if (va != vb) facets.push_back({va, vb, -1});
            return;
        }
        if (np == 1 || nn == 1) {
            const int lone = (np == 1) ? pos[0] : neg[0];
            int v[3], m = 0;
            for (int i = 0; i < 4; ++i)
                if (i != lone) v[m++] = crossing_vertex(ids[lone], ids[i], cell_idx);
            if (v[0] != v[1] && v[1] != v[2] && v[0] != v[2]) facets.push_back({v[0], v[1], v[2]});
            return;
        }
        // 2-2 case: quad across the four mixed edges, split into two triangles.
        const int a = pos[0], b = pos[1], c = neg[0], d = neg[1];
        const int vac = crossing_vertex(ids[a], ids[c], cell_idx);
        const int vad = crossing_vertex(ids[a], ids[d], cell_idx);
        const int vbd = crossing_vertex(ids[b], ids[d], cell_idx);
        const int vbc = crossing_vertex(ids[b], ids[c], cell_idx);
        if (vac != vad && vad != vbd && vac != vbd) facets.push_back({vac, vad, vbd});
        if (vac != vbd && vbd != vbc && vac != vbc) facets.push_back({vac, vbd, vbc});
    }

    void process_cell(std::int64_t cell_idx) {
        int k[3] = {0, 0, 0};
        std::int64_t r = cell_idx;
        const int m = grid.cells_per_axis();
        for (int i = n - 1; i >= 0; --i) {
            k[i] = static_cast<int>(r % m);
            r /= m;
        }
        double center[3] = {0, 0, 0};
        grid.cell_center(cell_idx, center);
        double c2 = 0;
        for (int i = 0; i < n; ++i) c2 += center[i] * center[i];
        const double cr = std::sqrt(c2);
        if (cr > grid.radius + grid.h) return;

        if (n == 2) {
            const int c00[2] = {k[0], k[1]}, c01[2] = {k[0], k[1] + 1};
            const int c10[2] = {k[0] + 1, k[1]}, c11[2] = {k[0] + 1, k[1] + 1};
            const std::int64_t p00 = point_id(c00), p01 = point_id(c01), p10 = point_id(c10),
                               p11 = point_id(c11);
            const std::int64_t pc = center_id_base + cell_idx;
            const std::int64_t tris[4][3] = {
                {p00, p10, pc}, {p10, p11, pc}, {p11, p01, pc}, {p01, p00, pc}};
            for (const auto& t : tris) emit_simplex(t, 3, cell_idx);
        } else {
            // Kuhn subdivision: six tetrahedra along the main diagonal.
            static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                            {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            for (const auto& perm : perms) {
                std::int64_t ids[4];
                int corner[3] = {k[0], k[1], k[2]};
                ids[0] = point_id(corner);
                for (int step = 0; step < 3; ++step) {
                    corner[perm[step]] += 1;
                    ids[step + 1] = point_id(corner);
                }
                emit_simplex(ids, 4, cell_idx);
            }
        }
    }
};

bool facet_is_triangle(const std::array<int, 3>& f) { return f[2] >= 0; }

} // namespace

double MeshComponent::total_area() const {
    double s = 0;
    for (double a : area) s += a;
    return s;
}

Vec3 MeshComponent::min_vertex() const {
    Vec3 m{1e300, 1e300, 1e300};
    for (const auto& v : vertices) m = std::min(m, v);
    return m;
}

std::size_t LevelSetMesh::facet_count() const {
    std::size_t c = 0;
    for (const auto& comp : components) c += comp.facets.size();
    return c;
}

double LevelSetMesh::total_area() const {
    double s = 0;
    for (const auto& comp : components) s += comp.total_area();
    return s;
}

LevelSetMesh extract_level_set(const RealPoly& F, const GridSpec& grid, exec::Mode mode) {
    grid.validate();
    if (F.dim() != grid.n) throw config_error("extract_level_set: dimension mismatch");
    LevelSetMesh mesh;
    mesh.n = grid.n;
    mesh.grid = grid;

    Builder b(F, grid, mode);

    // Active cells: any sign change among the cell's own grid points, found
    // in parallel per fixed chunk and concatenated in chunk order.
    const std::int64_t n_cells = grid.cell_count();
    constexpr std::int64_t kChunk = 8192;
    const std::int64_t n_chunks = (n_cells + kChunk - 1) / kChunk;
    std::vector<std::vector<std::int64_t>> chunk_active(static_cast<size_t>(n_chunks));
    std::vector<char> chunk_touch(static_cast<size_t>(n_chunks), 0);
    const int m = grid.cells_per_axis();
    exec::parallel_fill(mode, n_chunks, [&](std::int64_t c) {
        auto& out = chunk_active[static_cast<size_t>(c)];
        for (std::int64_t idx = c * kChunk; idx < std::min(n_cells, (c + 1) * kChunk); ++idx) {
            int k[3] = {0, 0, 0};
            std::int64_t r = idx;
            for (int i = grid.n - 1; i >= 0; --i) {
                k[i] = static_cast<int>(r % m);
                r /= m;
            }
            bool any_pos = false, any_neg = false;
            const int corners = 1 << grid.n;
            for (int mask = 0; mask < corners; ++mask) {
                int kk[3];
                for (int i = 0; i < grid.n; ++i) kk[i] = k[i] + ((mask >> i) & 1);
                const double v = b.values[static_cast<size_t>(b.point_id(kk))];
                (v > 0.0 ? any_pos : any_neg) = true;
            }
            if (any_pos && any_neg) out.push_back(idx);
            // Domain touching the ball boundary counts as clipping even
            // without a crossing inside the box.
            if (!any_pos || (any_pos && any_neg)) {
                double x[3] = {0, 0, 0};
                grid.cell_center(idx, x);
                double c2 = 0;
                for (int i = 0; i < grid.n; ++i) c2 += x[i] * x[i];
                const double cr = std::sqrt(c2);
                if (cr <= grid.radius && cr > grid.radius - 2 * grid.h) {
                    double fc = F(x);
                    if (fc <= 0.0) chunk_touch[static_cast<size_t>(c)] = 1;
                }
            }
        }
    });
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        if (chunk_touch[static_cast<size_t>(c)]) b.boundary_touch = true;
        for (std::int64_t idx : chunk_active[static_cast<size_t>(c)]) b.process_cell(idx);
    }

    // Restrict facets to the ball. A facet straddling the sphere |x| = R is
    // cut back to its inside part (against the local tangent plane for
    // triangles, the exact circle for segments), which keeps the surface
    // quadrature O(h^2)-accurate along the clip curve; its presence is what
    // the clipped flag reports. Facets entirely beyond the sphere belong to
    // surface pieces outside the ball and are silently discarded.
    bool straddle = false;
    std::vector<std::array<int, 3>> kept;
    kept.reserve(b.facets.size());
    const double R = grid.radius;
    for (const auto& f : b.facets) {
        const int nv = facet_is_triangle(f) ? 3 : 2;
        double rmin = 1e300, rmax = 0.0;
        for (int i = 0; i < nv; ++i) {
            const double r = norm2(b.verts[static_cast<size_t>(f[static_cast<size_t>(i)])]);
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
        if (rmin > R) continue;
        if (rmax <= R) {
            kept.push_back(f);
            continue;
        }
        straddle = true;
        if (nv == 2) {
            // Exact chord clip: keep the parameter range with |a + t(b-a)| <= R.
            const Vec3 a = b.verts[static_cast<size_t>(f[0])];
            const Vec3 bb = b.verts[static_cast<size_t>(f[1])];
            const Vec3 d = sub(bb, a);
            const double qa = dot(d, d), qb = 2.0 * dot(a, d), qc = dot(a, a) - R * R;
            const double disc = qb * qb - 4 * qa * qc;
            if (disc <= 0 || qa == 0) continue;
            const double sq = std::sqrt(disc);
            const double t0 = std::max(0.0, (-qb - sq) / (2 * qa));
            const double t1 = std::min(1.0, (-qb + sq) / (2 * qa));
            if (t1 - t0 < 1e-12) continue;
            auto lerp = [&](double t) {
                return Vec3{a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2]};
            };
            int ia = f[0], ib = f[1];
            if (t0 > 0.0) {
                ia = static_cast<int>(b.verts.size());
                b.verts.push_back(lerp(t0));
            }
            if (t1 < 1.0) {
                ib = static_cast<int>(b.verts.size());
                b.verts.push_back(lerp(t1));
            }
            kept.push_back({ia, ib, -1});
        } else {
            // Sutherland-Hodgman clip against the sphere's tangent plane at
            // the radial foot of the triangle midpoint (flat to O(h^2/R)).
            Vec3 mid{0, 0, 0};
            for (int i = 0; i < 3; ++i)
                for (int d2 = 0; d2 < 3; ++d2)
                    mid[static_cast<size_t>(d2)] += b.verts[static_cast<size_t>(f[static_cast<size_t>(i)])][static_cast<size_t>(d2)] / 3.0;
            const double mn = norm2(mid);
            if (mn == 0) continue;
            const Vec3 u{mid[0] / mn, mid[1] / mn, mid[2] / mn};
            std::vector<int> poly = {f[0], f[1], f[2]};
            std::vector<int> out;
            for (size_t i = 0; i < poly.size(); ++i) {
                const int cur = poly[i], nxt = poly[(i + 1) % poly.size()];
                const Vec3 pc = b.verts[static_cast<size_t>(cur)], pn = b.verts[static_cast<size_t>(nxt)];
                const double dc = dot(pc, u) - R, dn = dot(pn, u) - R;
                if (dc <= 0) out.push_back(cur);
                if ((dc <= 0) != (dn <= 0)) {
                    const double t = dc / (dc - dn);
                    out.push_back(static_cast<int>(b.verts.size()));
                    b.verts.push_back(Vec3{pc[0] + t * (pn[0] - pc[0]), pc[1] + t * (pn[1] - pc[1]),
                                           pc[2] + t * (pn[2] - pc[2])});
                }
            }
            for (size_t i = 1; i + 1 < out.size(); ++i)
                kept.push_back({out[0], out[static_cast<size_t>(i)], out[static_cast<size_t>(i + 1)]});
        }
    }
    mesh.clipped = straddle || b.boundary_touch;
    if (kept.empty()) return mesh;

    // Connected components via shared edges (n = 3) or shared vertices (n = 2).
    const int nf = static_cast<int>(kept.size());
    DisjointSet ds(nf);
    if (grid.n == 3) {
        std::unordered_map<std::uint64_t, int> first_facet_of_edge;
        for (int fi = 0; fi < nf; ++fi) {
            const auto& f = kept[static_cast<size_t>(fi)];
            for (int e = 0; e < 3; ++e) {
                const std::uint64_t key =
                    edge_key(f[static_cast<size_t>(e)], f[static_cast<size_t>((e + 1) % 3)]);
                auto [it, inserted] = first_facet_of_edge.emplace(key, fi);
                if (!inserted) ds.unite(it->second, fi);
            }
        }
    } else {
        std::unordered_map<int, int> first_facet_of_vertex;
        for (int fi = 0; fi < nf; ++fi) {
            for (int e = 0; e < 2; ++e) {
                auto [it, inserted] =
                    first_facet_of_vertex.emplace(kept[static_cast<size_t>(fi)][static_cast<size_t>(e)], fi);
                if (!inserted) ds.unite(it->second, fi);
            }
        }
    }

    std::map<int, std::vector<int>> groups; // root -> facet indices, in order
    for (int fi = 0; fi < nf; ++fi) groups[ds.find(fi)].push_back(fi);

    for (auto& [root, facet_ids] : groups) {
        MeshComponent comp;
        std::unordered_map<int, int> local_of_global;
        std::unordered_map<std::uint64_t, int> edge_use;
        std::unordered_map<int, int> vertex_use;
        for (int fi : facet_ids) {
            std::array<int, 3> f = kept[static_cast<size_t>(fi)];
            const int nv = facet_is_triangle(f) ? 3 : 2;
            for (int i = 0; i < nv; ++i) {
                auto [it, inserted] =
                    local_of_global.emplace(f[static_cast<size_t>(i)], static_cast<int>(comp.vertices.size()));
                if (inserted) comp.vertices.push_back(b.verts[static_cast<size_t>(f[static_cast<size_t>(i)])]);
                f[static_cast<size_t>(i)] = it->second;
            }
            if (nv == 3) {
                for (int e = 0; e < 3; ++e)
                    edge_use[edge_key(f[static_cast<size_t>(e)], f[static_cast<size_t>((e + 1) % 3)])]++;
            } else {
                f[2] = -1;
                vertex_use[f[0]]++;
                vertex_use[f[1]]++;
            }
            comp.facets.push_back(f);
        }
        comp.closed = true;
        for (const auto& [k, cnt] : edge_use)
            if (cnt != 2) comp.closed = false;
        for (const auto& [k, cnt] : vertex_use)
            if (cnt != 2) comp.closed = false;

        // Facet geometry and natural orientation.
        for (auto& f : comp.facets) {
            Vec3 a = comp.vertices[static_cast<size_t>(f[0])];
            Vec3 bb = comp.vertices[static_cast<size_t>(f[1])];
            Vec3 c = facet_is_triangle(f) ? comp.vertices[static_cast<size_t>(f[2])] : Vec3{0, 0, 0};
            const int nv = facet_is_triangle(f) ? 3 : 2;
            Vec3 cen{0, 0, 0};
            for (int d = 0; d < 3; ++d)
                cen[static_cast<size_t>(d)] =
                    (a[static_cast<size_t>(d)] + bb[static_cast<size_t>(d)] + (nv == 3 ? c[static_cast<size_t>(d)] : 0.0)) / nv;
            double x[3] = {cen[0], cen[1], cen[2]};
            double g[3] = {0, 0, 0};
            F.gradient(x, g);
            Vec3 gv{g[0], g[1], (grid.n == 3) ? g[2] : 0.0};
            double ar;
            if (nv == 3) {
                const Vec3 nrm = cross(sub(bb, a), sub(c, a));
                ar = 0.5 * norm2(nrm);
                if (dot(nrm, gv) < 0) std::swap(f[1], f[2]); // align normal with grad F
            } else {
                const Vec3 t = sub(bb, a);
                ar = norm2(t);
                // Natural tangent satisfies det[grad F, t] > 0.
                if (gv[0] * t[1] - gv[1] * t[0] < 0) std::swap(f[0], f[1]);
            }
            comp.centroid.push_back(cen);
            comp.grad.push_back(gv);
            comp.grad_norm.push_back(norm2(gv));
            comp.area.push_back(ar);
        }
        mesh.components.push_back(std::move(comp));
    }

    std::sort(mesh.components.begin(), mesh.components.end(),
              [](const MeshComponent& a, const MeshComponent& b) {
                  return a.min_vertex() < b.min_vertex();
              });
    return mesh;
}

LevelSetMesh extract_level_set(const VersalDeformation& F, const std::vector<double>& lambda,
                               const GridSpec& grid, exec::Mode mode) {
    return extract_level_set(F.instantiate(lambda), grid, mode);
}

namespace {

// Ray-crossing parity helpers. A hit too close to a facet boundary or to
// the ray origin is reported as degenerate; the caller retries with the
// next direction from a fixed list of slightly irrational unit vectors.
constexpr double kRayEps = 1e-9;

Vec3 ray_direction(int attempt, int n) {
    const double golden = 0.6180339887498949;
    const double a = 0.7549 + golden * attempt;       // pseudo-random angles,
    const double b = 0.3318 + golden * attempt * 0.7; // deterministic in attempt
    if (n == 2) return {std::cos(6.283185307179586 * a), std::sin(6.283185307179586 * a), 0.0};
    const double z = 2.0 * std::fmod(b, 1.0) - 1.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 6.283185307179586 * std::fmod(a, 1.0);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

enum class Hit { Miss, Cross, Degenerate };

Hit ray_triangle(const Vec3& p, const Vec3& d, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 e1 = sub(b, a), e2 = sub(c, a);
    const Vec3 pv = cross(d, e2);
    const double det = dot(e1, pv);
    const double scale = norm2(e1) * norm2(e2);
    if (std::abs(det) < 1e-12 * std::max(scale, 1e-300)) {
        // Parallel ray: degenerate only if it grazes the triangle's plane
        // near the triangle; treat as degenerate conservatively.
        return Hit::Degenerate;
    }
    const Vec3 tv = sub(p, a);
    const double u = dot(tv, pv) / det;
    if (u < -kRayEps || u > 1 + kRayEps) return Hit::Miss;
    const Vec3 qv = cross(tv, e1);
    const double v = dot(d, qv) / det;
    if (v < -kRayEps || u + v > 1 + kRayEps) return Hit::Miss;
    const double t = dot(e2, qv) / det;
    if (t < -kRayEps) return Hit::Miss;
    if (u < kRayEps || v < kRayEps || u + v > 1 - kRayEps || t < kRayEps) return Hit::Degenerate;
    return Hit::Cross;
}

Hit ray_segment(const Vec3& p, const Vec3& d, const Vec3& a, const Vec3& b) {
    // Solve p + t d = a + s (b - a) in the plane.
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double det = d[0] * ey - d[1] * ex;
    if (std::abs(det) < 1e-14) return Hit::Degenerate;
    const double rx = a[0] - p[0], ry = a[1] - p[1];
    const double t = (rx * ey - ry * ex) / det;
    const double s = (rx * d[1] - ry * d[0]) / (-det);
    if (t < -kRayEps || s < -kRayEps || s > 1 + kRayEps) return Hit::Miss;
    if (t < kRayEps || s < kRayEps || s > 1 - kRayEps) return Hit::Degenerate;
    return Hit::Cross;
}

// Parity of ray crossings of p against one component; nullopt on a
// degenerate encounter.
std::optional<bool> point_in_component(const Vec3& p, const MeshComponent& comp, int n,
                                       const Vec3& dir) {
    int crossings = 0;
    for (const auto& f : comp.facets) {
        Hit h;
        if (n == 3)
            h = ray_triangle(p, dir, comp.vertices[static_cast<size_t>(f[0])],
                             comp.vertices[static_cast<size_t>(f[1])],
                             comp.vertices[static_cast<size_t>(f[2])]);
        else
            h = ray_segment(p, dir, comp.vertices[static_cast<size_t>(f[0])],
                            comp.vertices[static_cast<size_t>(f[1])]);
        if (h == Hit::Degenerate) return std::nullopt;
        if (h == Hit::Cross) ++crossings;
    }
    return (crossings % 2) == 1;
}

bool contains_with_retries(const Vec3& p, const MeshComponent& comp, int n) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto r = point_in_component(p, comp, n, ray_direction(attempt, n));
        if (r) return *r;
    }
    throw numeric_error("compute_nesting: ray casting degenerate in all retry directions");
}

} // namespace

void compute_nesting(LevelSetMesh& mesh) {
    for (size_t ci = 0; ci < mesh.components.size(); ++ci) {
        auto& comp = mesh.components[ci];
        if (comp.facets.empty()) continue;
        const Vec3 sample = comp.centroid[0];
        int depth = 1;
        for (size_t cj = 0; cj < mesh.components.size(); ++cj) {
            if (cj == ci) continue;
            const auto& other = mesh.components[cj];
            if (!other.closed) continue; // open pieces cannot act as containers
            if (contains_with_retries(sample, other, mesh.n)) ++depth;
        }
        comp.depth = depth;
    }
    mesh.nesting_computed = true;
}

void orient_arnold(LevelSetMesh& mesh) {
    if (!mesh.nesting_computed) compute_nesting(mesh);
    for (auto& comp : mesh.components) {
        for (double g : comp.grad_norm)
            if (!(g > 0.0))
                throw precondition_error("orient_arnold: zero gradient on a facet "
                                         "(irregular level set)");
        comp.orientation_sign = (comp.depth % 2 == 1) ? +1 : -1;
    }
    mesh.oriented = true;
}

bool domain_indicator(const RealPoly& F, const double* x, int n, double radius) {
    double r2 = 0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    if (r2 > radius * radius) return false;
    return F(x) <= 0.0;
}

bool domain_indicator(const VersalDeformation& F, const std::vector<double>& lambda,
                      const std::vector<double>& x, double radius) {
    if (static_cast<int>(x.size()) != F.dim())
        throw config_error("domain_indicator: point dimension mismatch");
    const RealPoly p = F.instantiate(lambda);
    return domain_indicator(p, x.data(), F.dim(), radius);
}

RegularityReport check_regularity(const LevelSetMesh& mesh, double tol) {
    RegularityReport rep;
    rep.clipped = mesh.clipped;
    rep.empty = mesh.empty();
    rep.min_grad = rep.empty ? 0.0 : 1e300;
    for (const auto& comp : mesh.components)
        for (double g : comp.grad_norm) rep.min_grad = std::min(rep.min_grad, g);
    rep.regular = !rep.empty && !rep.clipped && rep.min_grad > tol;
    return rep;
}

double component_winding(const MeshComponent& c, int n, const Vec3& p, int sign) {
    double acc = 0.0;
    if (n == 3) {
        for (const auto& f : c.facets) {
            const Vec3 a = sub(c.vertices[static_cast<size_t>(f[0])], p);
            const Vec3 b = sub(c.vertices[static_cast<size_t>(f[1])], p);
            const Vec3 d = sub(c.vertices[static_cast<size_t>(f[2])], p);
            const double la = norm2(a), lb = norm2(b), ld = norm2(d);
            const double num = dot(a, cross(b, d));
            const double den = la * lb * ld + dot(a, b) * ld + dot(a, d) * lb + dot(b, d) * la;
            acc += 2.0 * std::atan2(num, den);
        }
        return sign * acc / (4.0 * 3.14159265358979323846);
    }
    for (const auto& f : c.facets) {
        const Vec3 a = sub(c.vertices[static_cast<size_t>(f[0])], p);
        const Vec3 b = sub(c.vertices[static_cast<size_t>(f[1])], p);
        acc += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
    }
    return sign * acc / (2.0 * 3.14159265358979323846);
}

double divergence_volume(const LevelSetMesh& mesh) {
    double acc = 0.0;
    for (const auto& comp : mesh.components) {
        for (size_t fi = 0; fi < comp.facets.size(); ++fi) {
            const auto& f = comp.facets[fi];
            if (mesh.n == 3) {
                const Vec3& a = comp.vertices[static_cast<size_t>(f[0])];
                const Vec3& b = comp.vertices[static_cast<size_t>(f[1])];
                const Vec3& c = comp.vertices[static_cast<size_t>(f[2])];
                const Vec3 nrm = cross(sub(b, a), sub(c, a)); // 2 * area * normal
                acc += dot(comp.centroid[fi], nrm) / 2.0 / 3.0;
            } else {
                const Vec3& a = comp.vertices[static_cast<size_t>(f[0])];
                const Vec3& b = comp.vertices[static_cast<size_t>(f[1])];
                const double tx = b[0] - a[0], ty = b[1] - a[1];
                // Outward normal of {F <= 0} is the tangent rotated -90 deg.
                const double nx = ty, ny = -tx;
                acc += (comp.centroid[fi][0] * nx + comp.centroid[fi][1] * ny) / 2.0;
            }
        }
    }
    return acc;
}

std::string mesh_to_obj(const LevelSetMesh& mesh) {
    std::string out;
    char buf[160];
    int base = 1;
    std::vector<int> bases;
    for (const auto& comp : mesh.components) {
        bases.push_back(base);
        for (const auto& v : comp.vertices) {
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1],
                          mesh.n == 3 ? v[2] : 0.0);
            out += buf;
        }
        base += static_cast<int>(comp.vertices.size());
    }
    for (size_t ci = 0; ci < mesh.components.size(); ++ci) {
        const auto& comp = mesh.components[ci];
        std::snprintf(buf, sizeof buf, "g comp_%zu_depth_%d_sign_%s\n", ci, comp.depth,
                      comp.orientation_sign >= 0 ? "+1" : "-1");
        out += buf;
        for (const auto& f : comp.facets) {
            int a = bases[ci] + f[0], b = bases[ci] + f[1];
            if (mesh.n == 3) {
                int c = bases[ci] + f[2];
                if (comp.orientation_sign < 0) std::swap(b, c); // reversed orientation
                std::snprintf(buf, sizeof buf, "f %d %d %d\n", a, b, c);
            } else {
                if (comp.orientation_sign < 0) std::swap(a, b);
                std::snprintf(buf, sizeof buf, "l %d %d\n", a, b);
            }
            out += buf;
        }
    }
    return out;
}

} // namespace vcpot
