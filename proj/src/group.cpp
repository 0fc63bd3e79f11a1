#include "ramlab/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ramlab {

FiniteGroup group_from_table(std::string name, std::vector<std::vector<int>> table) {
    FiniteGroup G;
    G.name = std::move(name);
    G.n = static_cast<int>(table.size());
    G.mul = std::move(table);
    if (G.n == 0) throw ConstructionError("group '" + G.name + "': empty table");
    for (const auto& row : G.mul) {
        if (static_cast<int>(row.size()) != G.n)
            throw ConstructionError("group '" + G.name + "': ragged table");
        for (int v : row)
            if (v < 0 || v >= G.n)
                throw ConstructionError("group '" + G.name + "': entry out of range");
    }
    // identity
    G.id = -1;
    for (int e = 0; e < G.n; ++e) {
        bool ok = true;
        for (int x = 0; x < G.n && ok; ++x)
            if (G.mul[e][x] != x || G.mul[x][e] != x) ok = false;
        if (ok) {
            G.id = e;
            break;
        }
    }
    if (G.id < 0) throw ConstructionError("group '" + G.name + "': no identity");
    // inverses
    G.inv.assign(G.n, -1);
    for (int a = 0; a < G.n; ++a) {
        for (int b = 0; b < G.n; ++b)
            if (G.mul[a][b] == G.id && G.mul[b][a] == G.id) {
                G.inv[a] = b;
                break;
            }
        if (G.inv[a] < 0) throw ConstructionError("group '" + G.name + "': missing inverse");
    }
    // full associativity
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            for (int c = 0; c < G.n; ++c)
                if (G.mul[G.mul[a][b]][c] != G.mul[a][G.mul[b][c]])
                    throw ConstructionError("group '" + G.name + "': not associative");
    return G;
}

FiniteGroup trivial_group() { return group_from_table("1", {{0}}); }

FiniteGroup cyclic_group(int m) {
    if (m < 1) throw ConstructionError("cyclic group of non-positive order");
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    return group_from_table("Z/" + std::to_string(m), std::move(t));
}

namespace {

// quaternion units as (sign, axis) with axis in {1, i, j, k}
struct Quat {
    int sign;  // +1 / -1
    int axis;  // 0 = 1, 1 = i, 2 = j, 3 = k
};

Quat qmul(Quat a, Quat b) {
    static const int axis_tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_tab[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return Quat{a.sign * b.sign * sign_tab[a.axis][b.axis], axis_tab[a.axis][b.axis]};
}

int qindex(Quat q) { return q.axis * 2 + (q.sign > 0 ? 0 : 1); }
Quat qof(int idx) { return Quat{idx % 2 == 0 ? 1 : -1, idx / 2}; }

}  // namespace

FiniteGroup quaternion_group() {
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) t[a][b] = qindex(qmul(qof(a), qof(b)));
    return group_from_table("Q8", std::move(t));
}

FiniteGroup dihedral8_group() {
    // elements r^a s^b, a mod 4, b mod 2; s r s = r^-1
    auto idx = [](int a, int b) { return a + 4 * b; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a1 = 0; a1 < 4; ++a1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int a2 = 0; a2 < 4; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    // (r^.a1 s^.b1)(r^.a2 s^.b2) = r^(a1 + a2*(-1)^b1) s^(b1+b2)
                    int a = ((a1 + (b1 ? 4 - a2 : a2)) % 4 + 4) % 4;
                    int b = (b1 + b2) % 2;
                    t[idx(a1, b1)][idx(a2, b2)] = idx(a, b);
                }
    return group_from_table("D4", std::move(t));
}

FiniteGroup sl2_f3() {
    // 2x2 matrices over F_3 with det 1
    struct M {
        int a, b, c, d;
    };
    std::vector<M> elems;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    if (((a * d - b * c) % 3 + 3) % 3 == 1) elems.push_back({a, b, c, d});
    auto find = [&](M m) {
        for (size_t i = 0; i < elems.size(); ++i)
            if (elems[i].a == m.a && elems[i].b == m.b && elems[i].c == m.c && elems[i].d == m.d)
                return static_cast<int>(i);
        throw ConstructionError("SL2(F3): product escaped the element list");
    };
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const M &u = elems[x], &v = elems[y];
            M w{(u.a * v.a + u.b * v.c) % 3, (u.a * v.b + u.b * v.d) % 3,
                (u.c * v.a + u.d * v.c) % 3, (u.c * v.b + u.d * v.d) % 3};
            t[x][y] = find(w);
        }
    return group_from_table("SL2F3", std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    const int n = A.n * B.n;
    auto idx = [&](int a, int b) { return a * B.n + b; };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a1 = 0; a1 < A.n; ++a1)
        for (int b1 = 0; b1 < B.n; ++b1)
            for (int a2 = 0; a2 < A.n; ++a2)
                for (int b2 = 0; b2 < B.n; ++b2)
                    t[idx(a1, b1)][idx(a2, b2)] = idx(A.mul[a1][a2], B.mul[b1][b2]);
    return group_from_table(A.name + "x" + B.name, std::move(t));
}

FiniteGroup central_product(const FiniteGroup& A, const FiniteGroup& B) {
    Subgroup za = center(A), zb = center(B);
    unsigned p = pgroup_prime(A);
    if (p == 0 || pgroup_prime(B) != p)
        throw ConstructionError("central product: factors must be p-groups for one p");
    if (za.size() != static_cast<size_t>(p) || zb.size() != static_cast<size_t>(p))
        throw ConstructionError("central product: centers must have order p");
    // generator of each center
    int ga = za[0] == A.id ? za[1] : za[0];
    int gb = zb[0] == B.id ? zb[1] : zb[0];
    // quotient of A x B by <(ga, gb^-1)>
    FiniteGroup P = direct_product(A, B);
    std::vector<int> sub;
    {
        int z = P.id;
        int gen = ga * B.n + B.inv[gb];
        do {
            sub.push_back(z);
            z = P.mul[z][gen];
        } while (z != P.id);
    }
    std::sort(sub.begin(), sub.end());
    FiniteGroup Q = quotient_group(P, sub);
    Q.name = A.name + "*" + B.name;
    return Q;
}

FiniteGroup extraspecial_group(unsigned p, unsigned n, bool minus_type) {
    if (n < 1) throw ConstructionError("extraspecial group needs n >= 1");
    if (p == 2) {
        FiniteGroup G = minus_type ? quaternion_group() : dihedral8_group();
        for (unsigned i = 1; i < n; ++i) G = central_product(G, dihedral8_group());
        G.name = "extraspecial(2," + std::to_string(n) + (minus_type ? ",minus)" : ",plus)");
        return G;
    }
    // odd p, exponent p: V x F_p with V = F_p^{2n} and the standard
    // symplectic form <(x,y),(x',y')> = x.y' - x'.y
    const unsigned dim = 2 * n;
    long order = 1;
    for (unsigned i = 0; i <= dim; ++i) order *= p;
    auto decode = [&](long idx, std::vector<int>& v, int& c) {
        v.assign(dim, 0);
        for (unsigned i = 0; i < dim; ++i) {
            v[i] = static_cast<int>(idx % p);
            idx /= p;
        }
        c = static_cast<int>(idx % p);
    };
    auto encode = [&](const std::vector<int>& v, int c) {
        long idx = c;
        for (unsigned i = dim; i-- > 0;) idx = idx * p + v[i];
        return idx;
    };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    std::vector<int> v1, v2, v3;
    for (long x = 0; x < order; ++x) {
        int c1, c2;
        decode(x, v1, c1);
        for (long y = 0; y < order; ++y) {
            decode(y, v2, c2);
            int pairing = 0;
            for (unsigned i = 0; i < n; ++i)
                pairing = (pairing + v1[i] * v2[n + i] - v1[n + i] * v2[i]) % static_cast<int>(p);
            pairing = (pairing % static_cast<int>(p) + p) % p;
            v3.assign(dim, 0);
            for (unsigned i = 0; i < dim; ++i) v3[i] = (v1[i] + v2[i]) % p;
            int c3 = (c1 + c2 + pairing) % static_cast<int>(p);
            t[x][y] = static_cast<int>(encode(v3, c3));
        }
    }
    return group_from_table("extraspecial(" + std::to_string(p) + "," + std::to_string(n) + ")",
                            std::move(t));
}

FiniteGroup q8q8_swap() {
    FiniteGroup Q = quaternion_group();
    const int n = 8 * 8 * 2;
    auto idx = [](int a, int b, int s) { return (a * 8 + b) * 2 + s; };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a1 = 0; a1 < 8; ++a1)
        for (int b1 = 0; b1 < 8; ++b1)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int a2 = 0; a2 < 8; ++a2)
                    for (int b2 = 0; b2 < 8; ++b2)
                        for (int s2 = 0; s2 < 2; ++s2) {
                            // (x, s)(y, t) = (x sigma^s(y), s + t)
                            int ya = s1 ? b2 : a2, yb = s1 ? a2 : b2;
                            t[idx(a1, b1, s1)][idx(a2, b2, s2)] =
                                idx(Q.mul[a1][ya], Q.mul[b1][yb], (s1 + s2) % 2);
                        }
    return group_from_table("(Q8xQ8):2", std::move(t));
}

FiniteGroup make_named(const std::string& name) {
    if (name == "1") return trivial_group();
    if (name.rfind("Z/", 0) == 0) return cyclic_group(std::stoi(name.substr(2)));
    if (name == "Q8") return quaternion_group();
    if (name == "D4") return dihedral8_group();
    if (name == "SL2F3") return sl2_f3();
    if (name == "Q8xQ8") return direct_product(quaternion_group(), quaternion_group());
    if (name == "(Q8xQ8):2") return q8q8_swap();
    if (name.rfind("extraspecial(", 0) == 0) {
        std::string args = name.substr(13, name.size() - 14);
        unsigned p = 0, n = 0;
        bool minus = true;
        size_t c1 = args.find(',');
        size_t c2 = args.find(',', c1 + 1);
        p = std::stoul(args.substr(0, c1));
        n = std::stoul(args.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
        if (c2 != std::string::npos) minus = args.substr(c2 + 1) != "plus";
        return extraspecial_group(p, n, minus);
    }
    throw DomainError("unsupported group name '" + name + "'");
}

Subgroup full_subgroup(const FiniteGroup& G) {
    Subgroup s(G.n);
    for (int i = 0; i < G.n; ++i) s[i] = i;
    return s;
}

Subgroup subgroup_generated(const FiniteGroup& G, std::vector<int> gens) {
    std::set<int> seen{G.id};
    std::vector<int> stack{G.id};
    for (int g : gens)
        if (seen.insert(g).second) stack.push_back(g);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int g : gens) {
            for (int y : {G.mul[x][g], G.mul[g][x], G.inv[x]}) {
                if (seen.insert(y).second) stack.push_back(y);
            }
        }
    }
    return Subgroup(seen.begin(), seen.end());
}

Subgroup center(const FiniteGroup& G) {
    Subgroup z;
    for (int a = 0; a < G.n; ++a) {
        bool central = true;
        for (int b = 0; b < G.n && central; ++b)
            if (G.mul[a][b] != G.mul[b][a]) central = false;
        if (central) z.push_back(a);
    }
    return z;
}

Subgroup derived_subgroup(const FiniteGroup& G) {
    std::vector<int> comms;
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            comms.push_back(G.mul[G.mul[a][b]][G.inv[G.mul[b][a]]]);
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return subgroup_generated(G, comms);
}

unsigned pgroup_prime(const FiniteGroup& G) {
    int n = G.n;
    if (n == 1) return 0;
    unsigned p = 2;
    while (n % p != 0) ++p;
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

Subgroup frattini_subgroup(const FiniteGroup& G) {
    unsigned p = pgroup_prime(G);
    if (p == 0 && G.n > 1) throw DomainError("Frattini subgroup implemented for p-groups only");
    std::vector<int> gens = derived_subgroup(G);
    for (int a = 0; a < G.n; ++a) {
        int x = a;
        for (unsigned i = 1; i < std::max(p, 1u); ++i) x = G.mul[x][a];
        gens.push_back(x);  // a^p
    }
    return subgroup_generated(G, gens);
}

bool is_subgroup(const FiniteGroup& G, const Subgroup& H) {
    std::set<int> s(H.begin(), H.end());
    if (!s.count(G.id)) return false;
    for (int a : H) {
        if (!s.count(G.inv[a])) return false;
        for (int b : H)
            if (!s.count(G.mul[a][b])) return false;
    }
    return true;
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
    std::set<int> s(H.begin(), H.end());
    for (int g = 0; g < G.n; ++g)
        for (int h : H)
            if (!s.count(G.mul[G.mul[g][h]][G.inv[g]])) return false;
    return true;
}

bool is_abelian(const FiniteGroup& G) {
    for (int a = 0; a < G.n; ++a)
        for (int b = a + 1; b < G.n; ++b)
            if (G.mul[a][b] != G.mul[b][a]) return false;
    return true;
}

int element_order(const FiniteGroup& G, int a) {
    int x = a, ord = 1;
    while (x != G.id) {
        x = G.mul[x][a];
        ++ord;
    }
    return ord;
}

bool is_extraspecial(const FiniteGroup& G) {
    unsigned p = pgroup_prime(G);
    if (p == 0) throw DomainError("is_extraspecial: not a p-group");
    if (is_abelian(G)) return false;
    Subgroup Z = center(G), D = derived_subgroup(G), Phi = frattini_subgroup(G);
    if (Z.size() != p) return false;
    if (Z != D || Z != Phi) return false;
    // |G| = p^{2n+1}
    int n = G.n, k = 0;
    while (n > 1) {
        n /= p;
        ++k;
    }
    if (k % 2 == 0) throw Error("extraspecial group of even p-length " + std::to_string(k));
    return true;
}

FiniteGroup quotient_group(const FiniteGroup& G, const Subgroup& N) {
    if (!is_subgroup(G, N) || !is_normal(G, N))
        throw DomainError("quotient by a non-normal subset");
    std::set<int> s(N.begin(), N.end());
    std::vector<int> coset_of(G.n, -1);
    std::vector<int> reps;
    for (int g = 0; g < G.n; ++g) {
        if (coset_of[g] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(g);
        for (int h : N) coset_of[G.mul[g][h]] = c;
    }
    const int m = static_cast<int>(reps.size());
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a][b] = coset_of[G.mul[reps[a]][reps[b]]];
    return group_from_table(G.name + "/N", std::move(t));
}

bool is_elementary_abelian(const FiniteGroup& G, unsigned p, unsigned rank) {
    long expect = 1;
    for (unsigned i = 0; i < rank; ++i) expect *= p;
    if (G.n != expect) return false;
    if (!is_abelian(G)) return false;
    for (int a = 0; a < G.n; ++a)
        if (a != G.id && element_order(G, a) != static_cast<int>(p)) return false;
    return true;
}

bool looks_like_q8(const FiniteGroup& G, const Subgroup& H) {
    if (H.size() != 8 || !is_subgroup(G, H)) return false;
    int involutions = 0;
    bool abelian = true;
    for (int a : H)
        for (int b : H)
            if (G.mul[a][b] != G.mul[b][a]) abelian = false;
    for (int a : H)
        if (a != G.id && G.mul[a][a] == G.id) ++involutions;
    return !abelian && involutions == 1;
}

Subgroup unique_two_sylow(const FiniteGroup& G) {
    Subgroup two;
    for (int a = 0; a < G.n; ++a) {
        int ord = element_order(G, a);
        while (ord % 2 == 0) ord /= 2;
        if (ord == 1) two.push_back(a);
    }
    if (!is_subgroup(G, two)) return {};
    return two;
}

bool frattini_closure_surjective(const FiniteGroup& G, const std::vector<int>& images) {
    Subgroup phi = frattini_subgroup(G);
    std::vector<int> gens(phi.begin(), phi.end());
    gens.insert(gens.end(), images.begin(), images.end());
    return subgroup_generated(G, gens).size() == static_cast<size_t>(G.n);
}

}  // namespace ramlab
