#pragma once

#include "starcurve/arith.hpp"

#include <string>
#include <vector>

namespace starcurve {

struct IsogenyProfile {
    i64 D;
    i64 ell;
    i64 ascending;
    i64 horizontal;
    i64 descending;
};

IsogenyProfile isogeny_profile(i64 D, i64 ell);

enum class StepKind { Ascending, Horizontal, Descending };

struct IsogenyStep {
    i64 ell;
    StepKind kind;
    i64 from;
    i64 to;
    i64 choices;
};

enum class Uniqueness { Yes, No, Unknown };

struct UniquenessResult {
    Uniqueness answer = Uniqueness::No;
    i64 walks = 0;
    std::vector<IsogenyStep> certificate;
    std::string witness;
};

std::string to_string(Uniqueness u);
std::string to_string(StepKind k);

UniquenessResult unique_cyclic_isogeny(i64 D, i64 Dprime, i64 d);

std::vector<i64> class_number_one_discriminants(i64 bound = 1000);

struct LiftEntry {
    i64 N;
    i64 d;
    i64 M;
    i64 D;
    i64 Dprime;
    std::vector<IsogenyStep> certificate;
};

std::vector<LiftEntry> cm_lift_report(i64 N);

}
