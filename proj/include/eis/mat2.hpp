#pragma once

#include "eis/field.hpp"

namespace eis {

// 2x2 matrix over F acting on row vectors from the right: (z1,z2) * M.
struct Mat2F {
    QuadElem e[2][2];

    static Mat2F identity(const FieldCtx& ctx) {
        QuadElem one(ctx, 1, 0), zero(ctx, 0, 0);
        return {{{one, zero}, {zero, one}}};
    }
    static Mat2F w0(const FieldCtx& ctx) {  // (0,1;-1,0)
        QuadElem one(ctx, 1, 0), zero(ctx, 0, 0);
        return {{{zero, one}, {-one, zero}}};
    }
    static Mat2F diag(const QuadElem& a, const QuadElem& d) {
        QuadElem zero(a.ctx(), 0, 0);
        return {{{a, zero}, {zero, d}}};
    }
    static Mat2F upper(const QuadElem& a, const QuadElem& b, const QuadElem& d) {
        QuadElem zero(a.ctx(), 0, 0);
        return {{{a, b}, {zero, d}}};
    }

    const FieldCtx& ctx() const { return e[0][0].ctx(); }
    QuadElem det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }

    Mat2F mul(const Mat2F& o) const {
        Mat2F r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = e[i][0] * o.e[0][j] + e[i][1] * o.e[1][j];
        return r;
    }
    Mat2F inverse() const {
        QuadElem d = det();
        if (d.is_zero()) throw Singular();
        Mat2F r;
        r.e[0][0] = e[1][1] / d;
        r.e[0][1] = -e[0][1] / d;
        r.e[1][0] = -e[1][0] / d;
        r.e[1][1] = e[0][0] / d;
        return r;
    }
    Mat2F conj() const {
        Mat2F r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j].conj();
        return r;
    }
    bool operator==(const Mat2F& o) const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (e[i][j] != o.e[i][j]) return false;
        return true;
    }
};

inline std::pair<QuadElem, QuadElem> row_apply(const QuadElem& z1, const QuadElem& z2,
                                               const Mat2F& m) {
    return {z1 * m.e[0][0] + z2 * m.e[1][0], z1 * m.e[0][1] + z2 * m.e[1][1]};
}

} // namespace eis
