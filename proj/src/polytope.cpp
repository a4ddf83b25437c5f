#include "polybound/polytope.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "polybound/errors.hpp"
#include "polybound/linalg.hpp"
#include "polybound/lp.hpp"

namespace polybound {

namespace {

std::vector<Rational> normalize_row(const std::vector<Rational>& a, const Rational& b) {
    std::vector<Rational> row = a;
    row.push_back(b);
    for (const Rational& c : row) {
        if (c != 0) {
            Rational scale = abs(c);
            for (Rational& x : row) x /= scale;
            return row;
        }
    }
    return row;
}

// Scales a nonzero rational vector to integer entries with gcd 1,
// preserving direction.
std::vector<Int> integerize_direction(const std::vector<Rational>& v) {
    Int lcm(1);
    for (const Rational& c : v) {
        Int l;
        mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
        lcm = l;
    }
    std::vector<Int> out;
    Int g(0);
    for (const Rational& c : v) {
        Int e = c.get_num() * (lcm / c.get_den());
        out.push_back(e);
        Int ng;
        mpz_gcd(ng.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        g = ng;
    }
    if (g == 0) throw MathError("cannot normalize the zero direction");
    for (Int& e : out) e /= g;
    return out;
}

// max/min of coordinate i over P; throws on unbounded/empty input.
std::pair<Rational, Rational> coordinate_range(const HRep& p, int coord) {
    LPProblem lp(static_cast<size_t>(p.dim));
    for (auto& vb : lp.var_bounds) vb = VarBound::Free;
    for (size_t i = 0; i < p.num_rows(); ++i) lp.add_row(p.A[i], RowSense::LessEq, p.b[i]);
    lp.objective[static_cast<size_t>(coord)] = 1;  // min x_i
    LPSolution lo = lp_solve(lp);
    lp.objective[static_cast<size_t>(coord)] = -1;  // max x_i via min -x_i
    LPSolution hi = lp_solve(lp);
    if (lo.status == LPStatus::Infeasible || hi.status == LPStatus::Infeasible)
        throw MathError("polytope validation: empty feasible region");
    if (lo.status == LPStatus::Unbounded || hi.status == LPStatus::Unbounded)
        throw MathError("polytope validation: unbounded in coordinate " +
                        std::to_string(coord));
    return {lo.objective, -hi.objective};
}

void validate(const HRep& p) {
    if (p.dim < 1) throw MathError("polytope validation: dimension must be >= 1");
    if (p.A.size() != p.b.size()) throw MathError("polytope validation: ragged H-rep");
    std::set<std::vector<Rational>> seen;
    for (size_t i = 0; i < p.num_rows(); ++i) {
        if (p.A[i].size() != static_cast<size_t>(p.dim))
            throw MathError("polytope validation: row has wrong dimension");
        bool all_zero = std::all_of(p.A[i].begin(), p.A[i].end(),
                                    [](const Rational& c) { return c == 0; });
        if (all_zero) throw MathError("polytope validation: zero constraint row");
        if (!seen.insert(normalize_row(p.A[i], p.b[i])).second)
            throw MathError("polytope validation: duplicate constraint row " +
                            std::to_string(i));
    }

    // Interior: max t with <A_i,x> + t <= b_i, 0 <= t <= 1. Strictly positive
    // optimum certifies an interior point, hence full dimension.
    LPProblem lp(static_cast<size_t>(p.dim) + 1);
    for (int j = 0; j < p.dim; ++j) lp.var_bounds[static_cast<size_t>(j)] = VarBound::Free;
    for (size_t i = 0; i < p.num_rows(); ++i) {
        std::vector<Rational> row = p.A[i];
        row.push_back(Rational(1));
        lp.add_row(std::move(row), RowSense::LessEq, p.b[i]);
    }
    std::vector<Rational> cap(static_cast<size_t>(p.dim) + 1, Rational(0));
    cap.back() = 1;
    lp.add_row(std::move(cap), RowSense::LessEq, Rational(1));
    lp.objective.back() = -1;  // maximize t
    LPSolution sol = lp_solve(lp);
    if (sol.status == LPStatus::Infeasible)
        throw MathError("polytope validation: empty feasible region");
    if (sol.status != LPStatus::Optimal || -sol.objective <= 0)
        throw MathError("polytope validation: polytope is not full-dimensional");

    for (int j = 0; j < p.dim; ++j) coordinate_range(p, j);  // rejects unbounded
}

} // namespace

HRep make_hrep(int dim, std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    HRep p{dim, std::move(A), std::move(b)};
    validate(p);
    return p;
}

HRep parse_hrep(std::istream& in) {
    std::string line;
    long n = -1;
    int d = 0;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            ls >> n >> d;
            if (ls.fail() || n < 1 || d < 1)
                throw ParseError("H-rep header must be '<n> <d>' (line " +
                                 std::to_string(lineno) + ")");
            continue;
        }
        std::string field;
        if (!(ls >> field)) throw ParseError("short H-rep row (line " + std::to_string(lineno) + ")");
        b.push_back(rational_from_string(field));
        std::vector<Rational> row;
        for (int j = 0; j < d; ++j) {
            if (!(ls >> field))
                throw ParseError("short H-rep row (line " + std::to_string(lineno) + ")");
            row.push_back(rational_from_string(field));
        }
        if (ls >> field) throw ParseError("trailing data on line " + std::to_string(lineno));
        A.push_back(std::move(row));
    }
    if (n < 0) throw ParseError("H-rep file has no header");
    if (static_cast<long>(A.size()) != n)
        throw ParseError("H-rep declares " + std::to_string(n) + " rows but has " +
                         std::to_string(A.size()));
    return make_hrep(d, std::move(A), std::move(b));
}

HRep parse_hrep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open H-rep file '" + path + "'");
    return parse_hrep(in);
}

std::vector<Vertex> enumerate_vertices(const HRep& p) {
    const size_t n = p.num_rows();
    const size_t d = static_cast<size_t>(p.dim);
    if (n < d) throw MathError("vertex enumeration: fewer rows than dimension");
    std::map<std::vector<Rational>, Vertex> found;

    std::vector<size_t> pick(d);
    // all d-subsets of rows, exact basis solve + feasibility filter
    auto process = [&](const std::vector<size_t>& subset) {
        Matrix a;
        std::vector<Rational> rhs;
        for (size_t i : subset) {
            a.push_back(p.A[i]);
            rhs.push_back(p.b[i]);
        }
        auto x = solve_square(std::move(a), std::move(rhs));
        if (!x) return;
        if (found.count(*x)) return;
        Vertex v;
        for (size_t i = 0; i < n; ++i) {
            Rational lhs(0);
            for (size_t j = 0; j < d; ++j) lhs += p.A[i][j] * (*x)[j];
            if (lhs > p.b[i]) return;  // infeasible basis point
            if (lhs == p.b[i]) v.tight.push_back(static_cast<int>(i));
        }
        v.point = *x;
        found.emplace(*x, std::move(v));
    };

    std::vector<size_t> idx(d);
    for (size_t i = 0; i < d; ++i) idx[i] = i;
    for (;;) {
        process(idx);
        // next combination
        size_t i = d;
        while (i > 0) {
            --i;
            if (idx[i] + (d - i) <= n - 1) {
                ++idx[i];
                for (size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) {
                std::vector<Vertex> out;
                for (auto& [pt, v] : found) out.push_back(std::move(v));
                return out;
            }
        }
    }
}

namespace {

// --- deterministic triangulation of a point set in convex position ---

struct Facet {
    std::vector<size_t> support;
};

// All facets of conv(points), where points affinely span R^e.
std::vector<Facet> enumerate_facets(const std::vector<std::vector<Rational>>& points,
                                    size_t e) {
    std::map<std::vector<Rational>, Facet> dedup;  // canonical (normal|offset)
    std::vector<size_t> idx(e);
    const size_t npts = points.size();
    std::vector<size_t> comb(e);
    for (size_t i = 0; i < e; ++i) comb[i] = i;
    if (npts < e) return {};
    for (;;) {
        // hyperplane through the chosen e points
        Matrix diffs;
        for (size_t i = 1; i < e; ++i) {
            std::vector<Rational> row(e);
            for (size_t j = 0; j < e; ++j)
                row[j] = points[comb[i]][j] - points[comb[0]][j];
            diffs.push_back(std::move(row));
        }
        auto normal = kernel_direction(std::move(diffs), e);
        if (normal) {
            Rational offset(0);
            for (size_t j = 0; j < e; ++j) offset += (*normal)[j] * points[comb[0]][j];
            int pos = 0, neg = 0;
            Facet f;
            for (size_t i = 0; i < npts; ++i) {
                Rational val(0);
                for (size_t j = 0; j < e; ++j) val += (*normal)[j] * points[i][j];
                int s = sign(val - offset);
                if (s > 0) ++pos;
                else if (s < 0) ++neg;
                else f.support.push_back(i);
            }
            if (pos == 0 || neg == 0) {
                // canonical key: integerized (normal|offset), oriented so the
                // point set lies on the <= side
                std::vector<Rational> key(*normal);
                key.push_back(offset);
                std::vector<Int> ik = integerize_direction(key);
                if (pos > 0)
                    for (Int& c : ik) c = -c;
                std::vector<Rational> ck(ik.begin(), ik.end());
                dedup.emplace(std::move(ck), std::move(f));
            }
        }
        // next combination
        size_t i = e;
        bool done = true;
        while (i > 0) {
            --i;
            if (comb[i] + (e - i) <= npts - 1) {
                ++comb[i];
                for (size_t j = i + 1; j < e; ++j) comb[j] = comb[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    std::vector<Facet> out;
    for (auto& [k, f] : dedup) out.push_back(std::move(f));
    return out;
}

// Pulling triangulation: cone the lex-smallest point over the triangulated
// facets that do not contain it. Deterministic; introduces no new points.
std::vector<std::vector<size_t>> triangulate_points(
    const std::vector<std::vector<Rational>>& points, size_t e) {
    const size_t npts = points.size();
    if (e == 0 || npts == e + 1) {
        std::vector<size_t> all(npts);
        for (size_t i = 0; i < npts; ++i) all[i] = i;
        if (npts != e + 1) throw MathError("triangulation: degenerate point set");
        return {all};
    }
    size_t anchor = 0;
    for (size_t i = 1; i < npts; ++i)
        if (points[i] < points[anchor]) anchor = i;

    std::vector<std::vector<size_t>> out;
    for (const Facet& f : enumerate_facets(points, e)) {
        if (std::find(f.support.begin(), f.support.end(), anchor) != f.support.end())
            continue;
        // project the facet into R^{e-1} along a coordinate its hyperplane
        // does not degenerate in: recompute normal from two support points
        // is unnecessary -- dropping any coordinate that keeps the points
        // affinely independent works; we find it by rank probing.
        size_t drop = e;
        for (size_t c = 0; c < e && drop == e; ++c) {
            Matrix probe;
            for (size_t i = 1; i < f.support.size(); ++i) {
                std::vector<Rational> row;
                for (size_t j = 0; j < e; ++j) {
                    if (j == c) continue;
                    row.push_back(points[f.support[i]][j] - points[f.support[0]][j]);
                }
                probe.push_back(std::move(row));
            }
            if (matrix_rank(std::move(probe)) == e - 1) drop = c;
        }
        if (drop == e) throw MathError("triangulation: cannot project facet");
        std::vector<std::vector<Rational>> sub;
        for (size_t i : f.support) {
            std::vector<Rational> q;
            for (size_t j = 0; j < e; ++j)
                if (j != drop) q.push_back(points[i][j]);
            sub.push_back(std::move(q));
        }
        for (const auto& tri : triangulate_points(sub, e - 1)) {
            std::vector<size_t> simplex{anchor};
            for (size_t local : tri) simplex.push_back(f.support[local]);
            std::sort(simplex.begin(), simplex.end());
            out.push_back(std::move(simplex));
        }
    }
    if (out.empty()) throw MathError("triangulation: no opposite facets found");
    return out;
}

std::vector<std::vector<Int>> extreme_rays(const HRep& p, const Vertex& v) {
    const size_t d = static_cast<size_t>(p.dim);
    std::set<std::vector<Int>> rays;
    const auto& tight = v.tight;
    if (tight.size() < d) throw MathError("tangent cone: vertex with deficient tight set");

    if (tight.size() == d) {
        // simple vertex: rays are the columns of -inverse(tight rows)
        for (size_t c = 0; c < d; ++c) {
            Matrix a;
            std::vector<Rational> rhs;
            for (size_t r = 0; r < d; ++r) {
                a.push_back(p.A[static_cast<size_t>(tight[r])]);
                rhs.push_back(r == c ? Rational(-1) : Rational(0));
            }
            auto u = solve_square(std::move(a), std::move(rhs));
            if (!u) throw MathError("tangent cone: tight rows are singular");
            rays.insert(integerize_direction(*u));
        }
    } else {
        // non-simple vertex: rank d-1 subsets of tight rows give candidate
        // directions, oriented into the feasible cone
        std::vector<size_t> comb(d - 1);
        for (size_t i = 0; i < d - 1; ++i) comb[i] = i;
        const size_t nt = tight.size();
        for (;;) {
            Matrix a;
            for (size_t i : comb) a.push_back(p.A[static_cast<size_t>(tight[i])]);
            if (auto z = kernel_direction(std::move(a), d)) {
                int ok_pos = 1, ok_neg = 1;
                for (int ti : tight) {
                    Rational dot(0);
                    for (size_t j = 0; j < d; ++j)
                        dot += p.A[static_cast<size_t>(ti)][j] * (*z)[j];
                    if (sign(dot) > 0) ok_pos = 0;
                    if (sign(dot) < 0) ok_neg = 0;
                }
                if (ok_pos != ok_neg) {  // both means z is in the lineality space
                    std::vector<Rational> dir = *z;
                    if (ok_neg)
                        for (auto& c : dir) c = -c;
                    rays.insert(integerize_direction(dir));
                }
            }
            size_t i = d - 1;
            bool done = true;
            while (i > 0) {
                --i;
                if (comb[i] + (d - 1 - i) <= nt - 1) {
                    ++comb[i];
                    for (size_t j = i + 1; j < d - 1; ++j) comb[j] = comb[j - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }
    return {rays.begin(), rays.end()};
}

} // namespace

std::vector<SimplicialCone> tangent_cones(const HRep& p, const std::vector<Vertex>& vertices) {
    const size_t d = static_cast<size_t>(p.dim);
    std::vector<SimplicialCone> out;
    for (const Vertex& v : vertices) {
        std::vector<std::vector<Int>> rays = extreme_rays(p, v);
        std::vector<std::vector<size_t>> simplices;
        if (rays.size() == d) {
            std::vector<size_t> all(d);
            for (size_t i = 0; i < d; ++i) all[i] = i;
            simplices.push_back(all);
        } else {
            // cross-section on the hyperplane <w, x> = 1 with w strictly
            // positive on the cone, then triangulate the section
            std::vector<Rational> w(d, Rational(0));
            for (int ti : v.tight)
                for (size_t j = 0; j < d; ++j) w[j] -= p.A[static_cast<size_t>(ti)][j];
            std::vector<std::vector<Rational>> section;
            for (const auto& r : rays) {
                Rational dot(0);
                for (size_t j = 0; j < d; ++j) dot += w[j] * r[j];
                if (sign(dot) <= 0) throw MathError("tangent cone: section functional failed");
                std::vector<Rational> q(d);
                for (size_t j = 0; j < d; ++j) q[j] = Rational(r[j]) / dot;
                section.push_back(std::move(q));
            }
            size_t drop = d;
            for (size_t j = 0; j < d && drop == d; ++j)
                if (w[j] != 0) drop = j;
            std::vector<std::vector<Rational>> projected;
            for (const auto& q : section) {
                std::vector<Rational> pr;
                for (size_t j = 0; j < d; ++j)
                    if (j != drop) pr.push_back(q[j]);
                projected.push_back(std::move(pr));
            }
            simplices = triangulate_points(projected, d - 1);
        }
        for (const auto& simplex : simplices) {
            SimplicialCone cone;
            cone.apex = v.point;
            Matrix ray_matrix;
            for (size_t i : simplex) {
                cone.rays.push_back(rays[i]);
                ray_matrix.emplace_back(rays[i].begin(), rays[i].end());
            }
            Rational det = determinant(std::move(ray_matrix));
            if (det == 0) throw MathError("tangent cone: triangulation produced a flat cone");
            cone.parallelepiped_volume = abs(det.get_num());
            out.push_back(std::move(cone));
        }
    }
    return out;
}

std::vector<SimplicialCone> tangent_cones(const HRep& p) {
    return tangent_cones(p, enumerate_vertices(p));
}

CoordinateWidth coordinate_width(const HRep& p) {
    CoordinateWidth cw;
    cw.width = 0;
    cw.abs_bound = 0;
    for (int j = 0; j < p.dim; ++j) {
        auto [lo, hi] = coordinate_range(p, j);
        Rational span = hi - lo;
        if (span > cw.width) cw.width = span;
        Rational alo = abs(lo), ahi = abs(hi);
        if (alo > cw.abs_bound) cw.abs_bound = alo;
        if (ahi > cw.abs_bound) cw.abs_bound = ahi;
        cw.ranges.emplace_back(lo, hi);
    }
    return cw;
}

std::vector<std::vector<Rational>> lattice_points(const HRep& p, unsigned long m) {
    if (m < 1) throw MathError("lattice_points: m must be >= 1");
    const size_t d = static_cast<size_t>(p.dim);
    CoordinateWidth cw = coordinate_width(p);
    Int mm(static_cast<unsigned long>(m));

    std::vector<Int> lo(d), hi(d);
    for (size_t j = 0; j < d; ++j) {
        const auto& [a, b2] = cw.ranges[j];
        lo[j] = ceil_div(a.get_num() * mm, a.get_den());
        hi[j] = floor_div(b2.get_num() * mm, b2.get_den());
    }

    // integer-scaled membership test: <A'_i, z> <= m * b'_i with integer rows
    std::vector<std::vector<Int>> ai(p.num_rows());
    std::vector<Int> bi(p.num_rows());
    for (size_t i = 0; i < p.num_rows(); ++i) {
        Int denlcm = p.b[i].get_den();
        for (const Rational& c : p.A[i]) {
            Int l;
            mpz_lcm(l.get_mpz_t(), denlcm.get_mpz_t(), c.get_den().get_mpz_t());
            denlcm = l;
        }
        for (const Rational& c : p.A[i]) ai[i].push_back(c.get_num() * (denlcm / c.get_den()));
        bi[i] = p.b[i].get_num() * (denlcm / p.b[i].get_den()) * mm;
    }

    std::vector<std::vector<Rational>> out;
    std::vector<Int> z(d);
    auto emit = [&]() {
        for (size_t i = 0; i < p.num_rows(); ++i) {
            Int lhs(0);
            for (size_t j = 0; j < d; ++j) lhs += ai[i][j] * z[j];
            if (lhs > bi[i]) return;
        }
        std::vector<Rational> pt(d);
        for (size_t j = 0; j < d; ++j) {
            pt[j] = Rational(z[j], mm);
            pt[j].canonicalize();
        }
        out.push_back(std::move(pt));
    };
    // lexicographic scan of the bounding box
    auto scan = [&](auto&& self, size_t j) -> void {
        if (j == d) {
            emit();
            return;
        }
        for (Int v = lo[j]; v <= hi[j]; ++v) {
            z[j] = v;
            self(self, j + 1);
        }
    };
    scan(scan, 0);
    return out;
}

} // namespace polybound
