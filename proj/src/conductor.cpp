#include "ramlab/conductor.hpp"

#include <sstream>

namespace ramlab {

long FixedDimTable::dim_at(const std::string& label) const {
    auto it = dims.find(label);
    if (it == dims.end())
        throw DomainError("fixed-dimension table has no entry for subgroup '" + label + "'");
    return it->second;
}

void FixedDimTable::validate() const {
    for (const auto& [label, d] : dims)
        if (d < 0 || d > 2 * genus)
            throw DomainError("fixed dimension for '" + label + "' outside [0, 2g]");
}

ConductorReport swan_conductor(const FiltrationProfile& lower, const FixedDimTable& dims) {
    if (lower.mode != FiltMode::lower) throw DomainError("swan_conductor expects a lower profile");
    lower.validate();
    dims.validate();
    ConductorReport rep;
    const long twog = 2 * dims.genus;
    rep.epsilon = twog - dims.dim_at(lower.label0);
    Rat prev = 0;
    for (const auto& seg : lower.segs) {
        long dfix = dims.dim_at(seg.label);
        Rat len = seg.upto - prev;
        Rat contrib = len * rat(seg.order, lower.order0) * Rat(twog - dfix);
        rep.ledger.push_back({prev, seg.upto, seg.label, seg.order, dfix, contrib});
        rep.swan += contrib;
        prev = seg.upto;
    }
    if (!rat_is_int(rep.swan)) {
        std::ostringstream os;
        os << "Swan conductor is not an integer: " << rat_str(rep.swan) << "; ledger:";
        for (const auto& line : rep.ledger)
            os << " (" << rat_str(line.from) << "," << rat_str(line.to) << "] " << line.label
               << " -> " << rat_str(line.contribution) << ";";
        throw Error(os.str());
    }
    rep.f = rep.epsilon + to_long(rep.swan.get_num());
    return rep;
}

ConductorReport swan_after_base_change(const FiltrationProfile& lower, long tame_degree,
                                       unsigned p, const std::string& label0_new,
                                       const FixedDimTable& dims) {
    FiltrationProfile big = tame_base_change(lower, tame_degree, p, label0_new);
    return swan_conductor(big, dims);
}

FixedDimTable fixed_dims_good_reduction(unsigned p, unsigned n) {
    long q = 1;
    for (unsigned i = 0; i < n; ++i) q *= p;
    FixedDimTable t;
    t.genus = q * (p - 1) / 2;
    t.dims["G"] = 0;
    t.dims["Z(G)"] = 0;
    t.dims["1"] = 2 * t.genus;
    return t;
}

long fixed_dims_elliptic_q8(const std::string& label) {
    if (label == "1") return 2;
    if (label == "Z(Q8)") return 0;
    if (label == "Q8") return 0;
    throw DomainError("fixed_dims_elliptic_q8: unsupported subgroup '" + label + "'");
}

}  // namespace ramlab
