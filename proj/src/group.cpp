#include "gkcalc/group.hpp"
#include <algorithm>

namespace gk {

FiniteGroup FiniteGroup::trivial() {
    FiniteGroup g;
    g.name = "1";
    g.order = 1;
    g.mul = {{0}};
    g.verify();
    return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
    FiniteGroup g;
    g.name = "Z" + std::to_string(n);
    g.order = n;
    g.mul.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) g.mul[i][j] = (i + j) % n;
    g.verify();
    return g;
}

void FiniteGroup::verify() {
    if (order <= 0 || (int)mul.size() != order)
        throw Error("group " + name + ": bad multiplication table size");
    for (auto& row : mul) {
        if ((int)row.size() != order) throw Error("group " + name + ": ragged table");
        for (int v : row)
            if (v < 0 || v >= order) throw Error("group " + name + ": table entry out of range");
    }
    identity = -1;
    for (int e = 0; e < order; e++) {
        bool ok = true;
        for (int g = 0; g < order; g++)
            if (mul[e][g] != g || mul[g][e] != g) { ok = false; break; }
        if (ok) { identity = e; break; }
    }
    if (identity < 0) throw Error("group " + name + ": no identity element");
    inverse.assign(order, -1);
    for (int g = 0; g < order; g++) {
        for (int h = 0; h < order; h++)
            if (mul[g][h] == identity && mul[h][g] == identity) { inverse[g] = h; break; }
        if (inverse[g] < 0) throw Error("group " + name + ": element " + std::to_string(g) + " has no inverse");
    }
    for (int g = 0; g < order; g++)
        for (int h = 0; h < order; h++)
            for (int k = 0; k < order; k++)
                if (mul[mul[g][h]][k] != mul[g][mul[h][k]])
                    throw Error("group " + name + ": associativity fails at (" +
                                std::to_string(g) + "," + std::to_string(h) + "," + std::to_string(k) + ")");
    // conjugacy classes
    class_of.assign(order, -1);
    class_rep.clear();
    for (int g = 0; g < order; g++) {
        if (class_of[g] >= 0) continue;
        int id = (int)class_rep.size();
        class_rep.push_back(g);
        for (int h = 0; h < order; h++) {
            int c = mul[mul[h][g]][inverse[h]];
            class_of[c] = id;
        }
    }
}

int FiniteGroup::element_order(int g) const {
    int n = 1, x = g;
    while (x != identity) { x = mul[x][g]; n++; }
    return n;
}

bool FiniteGroup::is_abelian() const {
    for (int g = 0; g < order; g++)
        for (int h = 0; h < order; h++)
            if (mul[g][h] != mul[h][g]) return false;
    return true;
}

} // namespace gk
