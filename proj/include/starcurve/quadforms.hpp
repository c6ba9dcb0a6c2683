#pragma once

#include "starcurve/arith.hpp"
#include "starcurve/quadorders.hpp"

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace starcurve {

struct QuadraticForm {
    i64 a = 1, b = 0, c = 1;

    i64 disc() const { return b * b - 4 * a * c; }
    bool primitive() const { return gcd(gcd(a, b), c) == 1; }
    bool is_reduced() const;
    std::string str() const;
    bool operator==(const QuadraticForm &) const = default;
    auto operator<=>(const QuadraticForm &) const = default;
};

QuadraticForm principal_form(i64 D);
QuadraticForm reduce_form(QuadraticForm f);
QuadraticForm inverse_form(const QuadraticForm &f);
QuadraticForm compose(const QuadraticForm &f, const QuadraticForm &g);

struct FormClassGroup {
    i64 D = -4;
    std::vector<QuadraticForm> elements;
    std::vector<std::vector<int>> table;
    std::vector<int> inverse;
    int identity = 0;

    int size() const { return static_cast<int>(elements.size()); }
    int index_of(const QuadraticForm &f) const;
    int mul(int i, int j) const { return table[i][j]; }
    int order_of(int i) const;
    int exponent() const;
    bool is_two_torsion() const { return exponent() <= 2; }
};

std::vector<QuadraticForm> reduced_forms(i64 D);
i64 class_number(i64 D);
std::shared_ptr<const FormClassGroup> class_group(i64 D);
bool is_principal(const FormClassGroup &G, const QuadraticForm &f);

QuadraticForm ideal_to_form(const ImagQuadOrder &O, const OrderIdeal &I);
QuadraticForm ideal_to_form(const OrderIdeal &I);

}
