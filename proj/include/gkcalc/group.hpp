#ifndef GKCALC_GROUP_HPP
#define GKCALC_GROUP_HPP

#include "gkcalc/matrix.hpp"
#include <string>
#include <vector>

namespace gk {

/* Finite group given by its multiplication table.  Element 0 need not be
 * the identity; the identity is located and all axioms verified. */
struct FiniteGroup {
    std::string name;
    int order = 1;
    std::vector<std::vector<int>> mul; // mul[g][h] = g*h
    int identity = 0;
    std::vector<int> inverse;

    // conjugacy classes, computed on verify(): class index per element and
    // one representative per class
    std::vector<int> class_of;
    std::vector<int> class_rep;

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);

    /* checks identity/inverse/associativity; fills inverse and classes */
    void verify();

    int op(int g, int h) const { return mul[g][h]; }
    int inv(int g) const { return inverse[g]; }
    int element_order(int g) const;
    bool is_abelian() const;
    int num_classes() const { return (int)class_rep.size(); }
};

} // namespace gk

#endif
