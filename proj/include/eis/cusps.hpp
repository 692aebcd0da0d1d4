#pragma once

#include <optional>

#include "eis/classgrp.hpp"
#include "eis/mat2.hpp"

namespace eis {

// Maximal arithmetic subgroup H(b) of SL2(F): matrices (a,b;c,d) with
// a,d in O, b in the ideal, c in its inverse, det 1; acts on row vectors.
struct MaxArithGroup {
    FracIdeal ideal_b;

    bool contains(const Mat2F& m) const;
    // The twist A = (0, 1; -1/Nm(b), 0) conjugating complex conjugation.
    Mat2F involution_matrix() const;
};

struct CuspClass {
    QuadElem z1, z2;
    long ideal_class = 0;
    FracIdeal stabilizer_lattice;  // a^{-2} b where a = z1*b + z2*O
    long partner = -1;             // filled by involution_pairs
};

FracIdeal cusp_ideal(const QuadElem& z1, const QuadElem& z2, const FracIdeal& b);
long j_map(const QuadElem& z1, const QuadElem& z2, const FracIdeal& b, const ClassGroup& cl);

// Cusps are equivalent under H(b) iff the generated ideals coincide; the
// witness sigma with (x1,x2) = (y1,y2) * sigma is built from lattice-adapted
// basis completions of both rows.
bool cusp_equiv(const QuadElem& x1, const QuadElem& x2, const QuadElem& y1,
                const QuadElem& y2, const FracIdeal& b, Mat2F* witness = nullptr);

std::vector<CuspClass> cusp_reps(const FracIdeal& b, const ClassGroup& cl);

FracIdeal cusp_stabilizer(const CuspClass& c, const FracIdeal& b, const ClassGroup& cl);

// Unipotent stabilizer element of the cusp for a translation parameter t.
Mat2F cusp_unipotent(const CuspClass& c, const QuadElem& t);

// Matching i -> partner under the involution; throws SquareClass for square
// [b] unless allow_fixed, in which case plain conjugation pairing (possibly
// with fixed points) is returned.
std::vector<std::pair<long, long>> involution_pairs(std::vector<CuspClass>& cusps,
                                                    const FracIdeal& b, const ClassGroup& cl,
                                                    bool allow_fixed = false);

} // namespace eis
