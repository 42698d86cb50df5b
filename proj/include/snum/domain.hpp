#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "snum/blockspace.hpp"
#include "snum/rational.hpp"

namespace snum {

// N_i = floor(2^{i*growth}) pairwise disjoint open dyadic cubes of side
// 2^{-i} per generation i = 0..generations-1, marched along the first axis
// with unit gaps. Cube sizes tend to 0, so the (idealized, infinite-
// generation) domain is quasi-bounded by construction.
struct CubeChain {
    int dim = 1;
    Rational growth = Rational(1); // declared packing growth target, >= dim
    int generations = 1;

    void validate() const {
        if (dim < 1 || dim > 6) throw std::invalid_argument("CubeChain: dim must be in [1,6]");
        if (generations < 1) throw std::invalid_argument("CubeChain: need at least one generation");
        if (growth < Rational(dim))
            throw std::invalid_argument("CubeChain: growth must be >= dim");
    }
    long long gen_count(int i) const { return floor_pow2(Rational(i) * growth); }
};

// built-in predicate domains with exact closed-cube inclusion tests
enum class PredicateKind {
    UnitCube,      // (0,1)^d
    AxisGraphRecip // {(x,y) : x > 0, 0 < y < 1/x}, d = 2
};

struct PredicateDomain {
    int dim = 1;
    PredicateKind kind = PredicateKind::UnitCube;
    int max_depth = 12;

    void validate() const {
        if (dim < 1 || dim > 3) throw std::invalid_argument("PredicateDomain: dim must be in [1,3]");
        if (kind == PredicateKind::AxisGraphRecip && dim != 2)
            throw std::invalid_argument("PredicateDomain: axis_graph domains live in dimension 2");
    }
};

struct DyadicDomain {
    std::variant<CubeChain, PredicateDomain> shape;

    int dim() const {
        return std::visit([](const auto& s) { return s.dim; }, shape);
    }
    std::string describe() const {
        if (auto* c = std::get_if<CubeChain>(&shape)) {
            return "chain b=" + c->growth.str() + " gens=" + std::to_string(c->generations) +
                   " dim=" + std::to_string(c->dim);
        }
        auto& p = std::get<PredicateDomain>(shape);
        return std::string(p.kind == PredicateKind::UnitCube ? "unit_cube" : "axis_graph recip") +
               " dim=" + std::to_string(p.dim);
    }
};

// ---------------------------------------------------------------------------
// counting: level-j dyadic grid cubes whose closure lies in the open set

// Closed form for the chain: an open generation-i cube of side 2^{-i}
// contains exactly max(0, 2^{j-i}-2)^d closed level-j grid cubes (the cubes
// are grid-aligned, so the two boundary slabs per axis drop out).
inline long long count_cubes(const CubeChain& c, int j) {
    c.validate();
    if (j < 0) throw std::invalid_argument("count_cubes: j must be >= 0");
    if (j > 62) throw std::overflow_error("count_cubes: level too deep");
    __int128 total = 0;
    for (int i = 0; i < c.generations && i < j; ++i) {
        long long inner = (1LL << (j - i)) - 2;
        if (inner <= 0) continue;
        __int128 cell = 1;
        for (int t = 0; t < c.dim; ++t) cell *= inner;
        total += (__int128)c.gen_count(i) * cell;
        if (total > INT64_MAX) throw std::overflow_error("count_cubes: count exceeds 64 bits");
    }
    return (long long)total;
}

namespace detail {

// closed-cube classification against the open set; cells are
// [m_i 2^{-l}, (m_i+1) 2^{-l}] per axis, l may be negative (coarse boxes)
struct CellTest {
    const PredicateDomain& dom;

    bool inside(int l, const std::vector<long long>& m) const {
        if (dom.kind == PredicateKind::UnitCube) {
            if (l <= 0) return false; // a cell at least unit-size never fits strictly
            for (long long mi : m)
                if (mi < 1 || mi + 1 >= (1LL << l)) return false;
            return true;
        }
        // axis_graph recip: x0 > 0, y0 > 0, x1*y1 < 1
        if (l <= 0) return false;
        if (m[0] < 1 || m[1] < 1) return false;
        return (__int128)(m[0] + 1) * (m[1] + 1) < ((__int128)1 << (2 * l));
    }

    bool outside(int l, const std::vector<long long>& m) const {
        if (dom.kind == PredicateKind::UnitCube) {
            // disjoint from (0,1) on some axis: x1 <= 0 or x0 >= 1
            for (long long mi : m) {
                if (mi + 1 <= 0) return true;
                if (l >= 0 ? mi >= (1LL << l) : mi >= 1) return true;
            }
            return false;
        }
        if (m[0] + 1 <= 0 || m[1] + 1 <= 0) return true;
        __int128 prod = (__int128)std::max(m[0], 0LL) * std::max(m[1], 0LL);
        if (l <= 0) return prod >= 1;
        return prod >= ((__int128)1 << (2 * l));
    }
};

inline long long count_predicate_rec(const CellTest& test, int l, std::vector<long long>& m, int j,
                                     int dim) {
    if (test.inside(l, m)) {
        long long e = (long long)dim * (j - l);
        if (e >= 62) throw std::overflow_error("count_cubes: count exceeds 64 bits");
        return 1LL << e;
    }
    if (test.outside(l, m) || l == j) return 0;
    long long total = 0;
    for (int child = 0; child < (1 << dim); ++child) {
        std::vector<long long> cm(m.size());
        for (int a = 0; a < dim; ++a) cm[(std::size_t)a] = 2 * m[(std::size_t)a] + ((child >> a) & 1);
        total += count_predicate_rec(test, l + 1, cm, j, dim);
    }
    return total;
}

} // namespace detail

inline long long count_cubes(const PredicateDomain& p, int j) {
    p.validate();
    if (j < 0) throw std::invalid_argument("count_cubes: j must be >= 0");
    if (j > p.max_depth) throw std::invalid_argument("count_cubes: level exceeds max_depth");
    detail::CellTest test{p};
    // start box: [0,1]^d for the unit cube; [0, 2^{j-1}]^2 covers every
    // candidate cell of the reciprocal graph at level j
    int l0 = p.kind == PredicateKind::UnitCube ? 0 : -std::max(j - 1, 0);
    std::vector<long long> origin((std::size_t)p.dim, 0);
    return detail::count_predicate_rec(test, l0, origin, j, p.dim);
}

inline long long count_cubes(const DyadicDomain& d, int j) {
    return std::visit([&](const auto& s) { return count_cubes(s, j); }, d.shape);
}

// ---------------------------------------------------------------------------
// explicit chain coordinates (plots, documentation, and the enumeration oracle)

struct ChainCube {
    int gen;
    Rational x0; // cube is (x0, x0+2^{-gen}) x (0, 2^{-gen})^{d-1}
};

inline std::vector<ChainCube> chain_cube_positions(const CubeChain& c) {
    c.validate();
    std::vector<ChainCube> cubes;
    Rational cursor(0);
    for (int i = 0; i < c.generations; ++i) {
        Rational side = Rational(1, 1LL << i);
        long long n = c.gen_count(i);
        for (long long g = 0; g < n; ++g) {
            cubes.push_back({i, cursor});
            cursor += side + Rational(1); // unit gap keeps everything disjoint
        }
    }
    return cubes;
}

// brute-force count over materialized coordinates; small j only
inline long long count_cubes_enumerated(const CubeChain& c, int j) {
    if (j < 0 || j > 20) throw std::invalid_argument("count_cubes_enumerated: j out of range");
    const long long P = 1LL << j;
    long long count = 0;
    for (const ChainCube& cube : chain_cube_positions(c)) {
        Rational side(1, 1LL << cube.gen);
        Rational x1 = cube.x0 + side;
        long long m_lo = (cube.x0 * Rational(P)).floor();
        long long m_hi = (x1 * Rational(P)).floor() + 1;
        // per-cell test of strict containment in the open cube
        std::vector<long long> axis_cells;
        for (long long n = 0; n <= P; ++n) {
            if (Rational(n, P) > Rational(0) && Rational(n + 1, P) < side) axis_cells.push_back(n);
            if (Rational(n, P) >= side) break;
        }
        for (long long m = m_lo; m <= m_hi; ++m) {
            if (!(Rational(m, P) > cube.x0 && Rational(m + 1, P) < x1)) continue;
            long long slab = 1;
            for (int a = 1; a < c.dim; ++a) slab *= (long long)axis_cells.size();
            count += slab;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// profile and block model

struct PackingProfile {
    int dim = 0;
    std::vector<std::pair<int, long long>> entries; // (j, b_j)
    double b_hat = 0.0;
    bool bj_condition = false;
    std::pair<double, double> ratio_range{0.0, 0.0}; // of b_j 2^{-j b_hat} on the fit window
    int fit_lo = 0, fit_hi = 0;
    std::optional<Rational> declared_growth; // chain target, when known
};

inline PackingProfile packing_profile(const DyadicDomain& dom, int j_max) {
    if (j_max < 4) throw std::invalid_argument("packing_profile: j_max must be >= 4");
    PackingProfile prof;
    prof.dim = dom.dim();
    bool any = false;
    for (int j = 0; j <= j_max; ++j) {
        long long b_j = count_cubes(dom, j);
        any = any || b_j > 0;
        prof.entries.emplace_back(j, b_j);
    }
    if (!any) throw std::domain_error("packing_profile: no cube fits at any level");
    if (auto* c = std::get_if<CubeChain>(&dom.shape)) prof.declared_growth = c->growth;

    // fit over the upper half of the levels to suppress transients
    prof.fit_lo = (j_max + 1) / 2;
    prof.fit_hi = j_max;
    double sx = 0, sy = 0, n = 0;
    for (auto& [j, b_j] : prof.entries) {
        if (j < prof.fit_lo || b_j <= 0) continue;
        sx += j;
        sy += std::log2((double)b_j);
        n += 1;
    }
    if (n < 2) throw std::domain_error("packing_profile: too few nonzero levels to fit");
    double mx = sx / n, my = sy / n, sxx = 0, sxy = 0;
    for (auto& [j, b_j] : prof.entries) {
        if (j < prof.fit_lo || b_j <= 0) continue;
        sxx += (j - mx) * (j - mx);
        sxy += (j - mx) * (std::log2((double)b_j) - my);
    }
    prof.b_hat = sxy / sxx;

    double rmin = 0, rmax = 0;
    bool first = true;
    for (auto& [j, b_j] : prof.entries) {
        if (j < prof.fit_lo || b_j <= 0) continue;
        double r = std::exp2(std::log2((double)b_j) - prof.b_hat * j);
        rmin = first ? r : std::min(rmin, r);
        rmax = first ? r : std::max(rmax, r);
        first = false;
    }
    prof.ratio_range = {rmin, rmax};
    // desk-scale proxy for 0 < liminf <= limsup < inf
    prof.bj_condition = rmin >= 1.0 / 64.0 && rmax <= 64.0;
    return prof;
}

// Sequence-space model fed by measured packing counts: declared growth for
// chains, the fitted slope otherwise, with the scale factor matched to the
// observed ratios.
inline SeqSpec blocks_from_domain(const PackingProfile& prof, const Rational& delta,
                                  const ExtReal& p1, const ExtReal& q1, const ExtReal& p2,
                                  const ExtReal& q2) {
    if (!prof.bj_condition)
        throw std::domain_error("blocks_from_domain: packing ratios not pinched; block model undefined");
    SeqSpec s;
    s.p1 = p1;
    s.q1 = q1;
    s.p2 = p2;
    s.q2 = q2;
    s.delta = delta;
    s.b = prof.declared_growth ? *prof.declared_growth
                               : Rational((long long)std::llround(prof.b_hat * 1024.0), 1024);
    s.rule = BlockRule::Scaled;
    double acc = 0;
    int n = 0;
    double bd = s.b.to_double();
    for (auto& [j, b_j] : prof.entries) {
        if (j < prof.fit_lo || b_j <= 0) continue;
        acc += std::log2((double)b_j) - bd * j;
        ++n;
    }
    double c = std::exp2(acc / n);
    s.scale_c = Rational((long long)std::llround(std::max(c, 1.0 / 4096.0) * 4096.0), 4096);
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// domain description files: line-oriented,
//   dim=<d>
//   chain b=<rational> gens=<J>   |   predicate unit_cube   |   predicate axis_graph recip

inline DyadicDomain parse_domain_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int dim = 0;
    std::optional<DyadicDomain> dom;
    auto fail = [](const std::string& msg) -> void { throw std::invalid_argument("domain file: " + msg); };
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok.rfind("dim=", 0) == 0) {
            dim = std::stoi(tok.substr(4));
            continue;
        }
        if (dim == 0) fail("expected dim=<d> before the shape line");
        if (tok == "chain") {
            CubeChain c;
            c.dim = dim;
            bool have_b = false, have_g = false;
            std::string kv;
            while (ls >> kv) {
                if (kv.rfind("b=", 0) == 0) { c.growth = Rational::parse(kv.substr(2)); have_b = true; }
                else if (kv.rfind("gens=", 0) == 0) { c.generations = std::stoi(kv.substr(5)); have_g = true; }
                else fail("unknown chain attribute '" + kv + "'");
            }
            if (!have_b || !have_g) fail("chain needs b=<rational> and gens=<J>");
            c.validate();
            dom = DyadicDomain{c};
        } else if (tok == "predicate") {
            std::string name;
            if (!(ls >> name)) fail("predicate needs a name");
            PredicateDomain p;
            p.dim = dim;
            if (name == "unit_cube") {
                p.kind = PredicateKind::UnitCube;
            } else if (name == "axis_graph") {
                std::string fn;
                if (!(ls >> fn) || fn != "recip") fail("axis_graph supports the catalog function 'recip'");
                p.kind = PredicateKind::AxisGraphRecip;
            } else {
                fail("unknown predicate '" + name + "'");
            }
            p.validate();
            dom = DyadicDomain{p};
        } else {
            fail("unknown directive '" + tok + "'");
        }
    }
    if (!dom) fail("no shape line found");
    return *dom;
}

} // namespace snum
