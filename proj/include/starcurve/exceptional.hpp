#pragma once

#include "starcurve/arith.hpp"

#include <string>
#include <vector>

namespace starcurve {

extern const std::vector<i64> kExceptionalPrimes;

/* prime powers adjoined to the exceptional levels (positive genus, no rank zero quotient) */
extern const std::vector<i64> kExceptionalPrimePowers;

bool is_exceptional_prime(i64 p);
bool exceptional_tuple(i64 p, const std::vector<i64> &rest);

struct LevelClassification {
    i64 level = 0;
    bool exceptional = false;
    std::string witness;
    int shape = 0;
};

LevelClassification is_exceptional_level(i64 Ntilde);
bool hv_check(i64 N, i64 M);

/* 0 when no shape applies; squares are tagged 4 even when another shape fits */
int shape_classify_or_zero(i64 Ntilde);
int shape_classify(i64 Ntilde);

std::vector<i64> exceptional_levels(i64 cap);
std::vector<i64> minimal_exceptional_family(i64 cap);
std::vector<i64> minimal_exceptional_family(i64 cap, const std::vector<i64> &prime_powers);

/* levels dropped from and adjoined to the minimal family to form the working family */
extern const std::vector<i64> kAdjustmentRemoved;
extern const std::vector<i64> kAdjustmentAdded;
std::vector<i64> adjusted_family(const std::vector<i64> &minimal);

}
