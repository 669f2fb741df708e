// The shipped 2-group catalog (test fixtures for the nilpotency and
// normal-core bounds), the subgroup-chain cases checked against the
// p^r s + r and m (p^{mn}-1)/(p^m-1) bounds, and a plain-text table format
// with a revalidating loader.
#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "freecurves/finite_groups.hpp"
#include "freecurves/surfaces.hpp"

namespace freecurves {

/// Orders 8..64: the five order-8 groups plus dihedral, quaternion-type,
/// elementary-abelian and wreath-style 2-groups.
inline std::vector<FiniteGroup> group_catalog() {
    std::vector<FiniteGroup> cat;
    // order 8
    cat.push_back(cyclic_group(8));
    cat.push_back(direct_product(cyclic_group(4), cyclic_group(2)));
    cat.push_back(elementary_abelian(3));
    cat.push_back(dihedral8());
    cat.push_back(quaternion_group(2));
    // order 16
    cat.push_back(cyclic_group(16));
    cat.push_back(elementary_abelian(4));
    cat.push_back(dihedral_group(8));
    cat.push_back(quaternion_group(4));
    cat.push_back(direct_product(dihedral8(), cyclic_group(2)));
    // order 32
    cat.push_back(dihedral_group(16));
    cat.push_back(quaternion_group(8));
    cat.push_back(elementary_abelian(5));
    cat.push_back(wreath_cyclic(4, 2));
    // order 64
    cat.push_back(dihedral_group(32));
    cat.push_back(quaternion_group(16));
    cat.push_back(elementary_abelian(6));
    cat.push_back(wreath_cyclic(2, 4));
    return cat;
}

// ---------------------------------------------------------------------------
// Catalog text format: one block per group,
//   group <name> <order>
//   elements <name0> <name1> ...
//   table
//   <order lines of <order> indices, row-major>
//   end
// The loader reconstructs FiniteGroup, which revalidates the table.
// ---------------------------------------------------------------------------

inline void write_catalog(std::ostream& out, const std::vector<FiniteGroup>& groups) {
    for (const auto& g : groups) {
        out << "group " << g.name() << " " << g.order() << "\n";
        out << "elements";
        for (int i = 0; i < g.order(); ++i) out << " " << g.element_name(i);
        out << "\ntable\n";
        for (int a = 0; a < g.order(); ++a) {
            for (int b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
            out << "\n";
        }
        out << "end\n";
    }
}

inline std::vector<FiniteGroup> load_catalog(std::istream& in) {
    std::vector<FiniteGroup> groups;
    std::string tok;
    while (in >> tok) {
        if (tok != "group") throw std::runtime_error("catalog: expected 'group', got " + tok);
        std::string name;
        int order;
        if (!(in >> name >> order)) throw std::runtime_error("catalog: bad group header");
        if (!(in >> tok) || tok != "elements") throw std::runtime_error("catalog: expected 'elements'");
        std::vector<std::string> elems(order);
        for (auto& e : elems)
            if (!(in >> e)) throw std::runtime_error("catalog: short element list");
        if (!(in >> tok) || tok != "table") throw std::runtime_error("catalog: expected 'table'");
        std::vector<int> table(static_cast<size_t>(order) * order);
        for (auto& v : table)
            if (!(in >> v)) throw std::runtime_error("catalog: short table");
        if (!(in >> tok) || tok != "end") throw std::runtime_error("catalog: expected 'end'");
        groups.emplace_back(name, std::move(elems), std::move(table)); // revalidates
    }
    return groups;
}

inline std::string catalog_to_string(const std::vector<FiniteGroup>& groups) {
    std::ostringstream os;
    write_catalog(os, groups);
    return os.str();
}

// ---------------------------------------------------------------------------
// Core-index bound cases
// ---------------------------------------------------------------------------

/// A three-term chain A > B > C with prime-power indices p^r, p^s inside a
/// catalog group; subgroups are given by generating element names.
struct TripleChainCase {
    std::string group;
    std::vector<std::string> b_gens;
    std::vector<std::string> c_gens;
};

/// A subnormal chain G = G_0 > G_1 > ... > G_n, every index p^m.
struct SubnormalChainCase {
    std::string group;
    std::vector<std::vector<std::string>> subgroup_gens; ///< G_1 ... G_n
};

inline std::vector<TripleChainCase> triple_chain_cases() {
    return {
        {"D8", {"r"}, {"r2"}},
        {"D8", {"r2", "s"}, {"s"}},
        {"Q8", {"a"}, {"a2"}},
        {"Z4xZ2", {"(1,0)"}, {"(2,0)"}},
        {"Z8", {}, {}}, // A = B = C, trivial indices
        {"D16", {"r"}, {"r4"}},
        {"Z2^4", {"1000", "0100", "0010"}, {"1000"}},
        {"D8xZ2", {"(s,0)", "(r2,0)"}, {"(s,0)"}},
        {"Z4wrZ2", {"[1,0];0", "[0,1];0"}, {"[1,0];0"}},
        {"Z2wrZ4", {"[1,0,0,0];0", "[0,1,0,0];0", "[0,0,1,0];0", "[0,0,0,1];0"},
         {"[1,0,0,0];0", "[0,1,0,0];0"}},
    };
}

inline std::vector<SubnormalChainCase> subnormal_chain_cases() {
    return {
        {"D8", {{"r"}, {"r2"}}},
        {"D16", {{"r"}, {"r2"}}},
        {"D16", {{"r"}, {"r2"}, {"r4"}}},
        {"Q16", {{"a"}, {"a2"}, {"a4"}}},
        {"D64", {{"r"}, {"r2"}, {"r4"}, {"r8"}}},
        {"Z4wrZ2", {{"[1,0];0", "[0,1];0"}, {"[1,0];0", "[0,2];0"}, {"[1,0];0"}}},
        {"Z2wrZ4", {{"[1,0,0,0];0", "[0,1,0,0];0", "[0,0,1,0];0", "[0,0,0,1];0"},
                    {"[1,0,0,0];0", "[0,1,0,0];0"}}},
    };
}

struct CoreBoundRow {
    std::string case_name;
    std::string lemma;     ///< "p^r s + r" or "m (p^mn - 1)/(p^m - 1)"
    int p = 2;
    long long actual_exponent = 0; ///< N with [A : core] = p^N
    long long bound_exponent = 0;
    bool holds = false;
};

struct CoreBoundReport {
    std::vector<CoreBoundRow> rows;
    bool all_hold() const {
        for (const auto& r : rows)
            if (!r.holds) return false;
        return true;
    }
};

namespace detail {

inline Subgroup named_subgroup(const FiniteGroup& g, const std::vector<std::string>& gen_names) {
    std::vector<int> gens;
    for (const auto& n : gen_names) {
        auto idx = g.element_index(n);
        if (!idx) throw std::runtime_error("chain case: no element '" + n + "' in " + g.name());
        gens.push_back(*idx);
    }
    return subgroup_closure(g, gens);
}

/// log_p of an exact power of p; throws otherwise.
inline long long exact_log(long long value, int p) {
    long long e = 0;
    while (value > 1) {
        if (value % p != 0) throw std::runtime_error("index is not a power of p");
        value /= p;
        ++e;
    }
    return e;
}

inline const FiniteGroup& find_group(const std::vector<FiniteGroup>& cat, const std::string& name) {
    for (const auto& g : cat)
        if (g.name() == name) return g;
    throw std::runtime_error("catalog: no group named " + name);
}

} // namespace detail

/// Checks every catalog chain case: computes the actual core index and
/// asserts it is a power of p within the corresponding bound. A violated
/// bound means a broken lemma or a broken implementation, so it is reported
/// as a hard failure.
inline CoreBoundReport verify_core_bounds(const std::vector<FiniteGroup>& cat) {
    CoreBoundReport rep;
    const int p = 2;
    for (const auto& cs : triple_chain_cases()) {
        const FiniteGroup& g = detail::find_group(cat, cs.group);
        const Subgroup a = whole_group(g);
        const Subgroup b = cs.b_gens.empty() ? a : detail::named_subgroup(g, cs.b_gens);
        const Subgroup c = cs.c_gens.empty() ? b : detail::named_subgroup(g, cs.c_gens);
        if (!subgroup_le(b, a) || !subgroup_le(c, b))
            throw std::runtime_error("chain case " + cs.group + ": not a descending chain");
        if (!normal_in(g, b, a) || !normal_in(g, c, b))
            throw std::runtime_error("chain case " + cs.group + ": chain is not subnormal");
        const long long r = detail::exact_log((long long)a.size() / b.size(), p);
        const long long s = detail::exact_log((long long)b.size() / c.size(), p);
        const Subgroup core = normal_core_in(g, a, c);
        if (!subgroup_le(core, c) || !normal_in(g, core, a))
            throw std::runtime_error("chain case " + cs.group + ": core is not a normal subgroup of A inside C");
        CoreBoundRow row;
        row.case_name = cs.group + " > B(" + std::to_string(b.size()) + ") > C(" +
                        std::to_string(c.size()) + ")";
        row.lemma = "p^r s + r";
        long long pr = 1;
        for (long long i = 0; i < r; ++i) pr *= p;
        row.bound_exponent = pr * s + r;
        row.actual_exponent = detail::exact_log((long long)a.size() / core.size(), p);
        row.holds = row.actual_exponent <= row.bound_exponent &&
                    (r == 0 || s == 0 || row.actual_exponent >= 1);
        rep.rows.push_back(std::move(row));
    }
    for (const auto& cs : subnormal_chain_cases()) {
        const FiniteGroup& g = detail::find_group(cat, cs.group);
        std::vector<Subgroup> chain{whole_group(g)};
        for (const auto& gens : cs.subgroup_gens)
            chain.push_back(detail::named_subgroup(g, gens));
        const int n = static_cast<int>(chain.size()) - 1;
        long long m = -1;
        for (int i = 1; i <= n; ++i) {
            if (!subgroup_le(chain[i], chain[i - 1]) || !normal_in(g, chain[i], chain[i - 1]))
                throw std::runtime_error("chain case " + cs.group + ": not subnormal");
            const long long mi =
                detail::exact_log((long long)chain[i - 1].size() / chain[i].size(), p);
            if (m == -1) m = mi;
            if (mi != m)
                throw std::runtime_error("chain case " + cs.group + ": unequal step indices");
        }
        const Subgroup core = normal_core_in(g, chain.front(), chain.back());
        CoreBoundRow row;
        row.case_name = cs.group + " chain n=" + std::to_string(n) + " m=" + std::to_string(m);
        row.lemma = "m (p^mn - 1)/(p^m - 1)";
        long long pm = 1;
        for (long long i = 0; i < m; ++i) pm *= p;
        long long pmn = 1;
        for (int i = 0; i < n; ++i) pmn *= pm;
        row.bound_exponent = m * (pmn - 1) / (pm - 1);
        row.actual_exponent =
            detail::exact_log((long long)chain.front().size() / core.size(), p);
        row.holds = row.actual_exponent >= 1 && row.actual_exponent <= row.bound_exponent;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The degree-8 detection homomorphisms of the covering construction
// ---------------------------------------------------------------------------

/// For a surface with boundary: α_1 -> s, β_1 -> rs, everything else -> 1.
/// Kills no commutator [α_1, β_1]-type class: its value is r² != 1.
inline FiniteHom dihedral_case1_hom(const SurfaceGenerators& sg, const FiniteGroup& d8) {
    if (sg.surface.genus < 1)
        throw std::invalid_argument("dihedral_case1_hom: needs genus >= 1");
    std::vector<int> images(sg.gens.rank(), d8.identity());
    images[sg.alpha_index(0)] = *d8.element_index("s");
    images[sg.beta_index(0)] = *d8.element_index("rs");
    return FiniteHom{sg.gens.rank(), &d8, std::move(images)};
}

/// The closed-surface variant, as pure algebra on the rank-2g free group on
/// α_1, β_1, ..., α_g, β_g: α_1, α_g -> s and β_1, β_g -> rs, rest -> 1.
/// The surface relator [α_1,β_1]···[α_g,β_g] maps to 1, while the
/// nullhomologous curve [α_1,β_1]···[α_{g'},β_{g'}] (g' < g) maps to r².
inline FiniteHom dihedral_case1_closed_hom(int genus, const FiniteGroup& d8) {
    if (genus < 2)
        throw std::invalid_argument("dihedral_case1_closed_hom: needs genus >= 2");
    std::vector<int> images(2 * genus, d8.identity());
    images[0] = *d8.element_index("s");
    images[1] = *d8.element_index("rs");
    images[2 * (genus - 1)] = *d8.element_index("s");
    images[2 * (genus - 1) + 1] = *d8.element_index("rs");
    return FiniteHom{2 * genus, &d8, std::move(images)};
}

/// The group-level content of the covering tower: a subnormal chain with
/// 2^3 steps yields a normal core of 2-power index within the Lemma bound,
/// and the quotient by the core is nilpotent of class < its 2-exponent, so
/// the corresponding γ-term of the ambient group lands inside the core.
struct TowerConclusion {
    long long core_index_exponent; ///< N with [G : core] = 2^N
    int quotient_class;            ///< nilpotency class of G / core
    bool gamma_contained;          ///< γ_{class+1}(G) ⊆ core, checked directly
};

inline TowerConclusion tower_conclusion(const FiniteGroup& g, const std::vector<Subgroup>& chain) {
    Subgroup core = normal_core(g, chain.empty() ? whole_group(g) : chain.back());
    TowerConclusion out{};
    out.core_index_exponent = detail::exact_log((long long)g.order() / core.size(), 2);
    FiniteGroup q = quotient_group(g, core);
    auto cls = nilpotency_class(q);
    if (!cls) throw std::runtime_error("tower_conclusion: quotient not nilpotent (not a 2-group?)");
    out.quotient_class = *cls;
    auto series = lower_central_series_of(g);
    const Subgroup& gamma =
        series[std::min<size_t>(series.size() - 1, static_cast<size_t>(out.quotient_class))];
    out.gamma_contained = subgroup_le(gamma, core);
    return out;
}

} // namespace freecurves
