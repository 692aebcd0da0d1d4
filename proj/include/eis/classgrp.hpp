#pragma once

#include <functional>
#include <map>
#include <vector>

#include "eis/ideal.hpp"

namespace eis {

// Primitive positive definite binary quadratic form A x^2 + B xy + C y^2
// of discriminant d = B^2 - 4AC.
struct QuadForm {
    Int A, B, C;
    Int disc() const { return B * B - 4 * A * C; }
    bool operator==(const QuadForm& o) const { return A == o.A && B == o.B && C == o.C; }
    bool operator<(const QuadForm& o) const {
        if (A != o.A) return A < o.A;
        if (B != o.B) return B < o.B;
        return C < o.C;
    }
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

QuadForm reduce_form(QuadForm f);
bool is_reduced(const QuadForm& f);

// Generic structure of a small abelian group given by a composition callback
// on element indices 0..n-1.
struct AbelianStructure {
    long order = 1;
    std::vector<long> divisors;            // n_1, n_2, ... with n_{i+1} | n_i
    std::vector<long> gens;                // element indices of a basis
    std::vector<std::vector<long>> dlogs;  // per element: exponents, e_i in [0, n_i)
};
AbelianStructure abelian_structure(long n, long identity,
                                   const std::function<long(long, long)>& compose);

class ClassGroup {
public:
    explicit ClassGroup(const FieldCtx& ctx);

    const FieldCtx& ctx() const { return *ctx_; }
    long h() const { return (long)elements_.size(); }
    const std::vector<QuadForm>& elements() const { return elements_; }
    const AbelianStructure& structure() const { return st_; }
    const QuadForm& principal_form() const { return elements_[id_]; }
    long principal_index() const { return id_; }

    long index_of(const QuadForm& reduced) const;
    long compose(long i, long j) const { return table_[i][j]; }
    long inverse(long i) const;
    long power(long i, long e) const;
    bool is_square(long i) const;

    // The dictionary A <-> (A, (-B+sqrt(d))/2) fixed once for the project.
    FracIdeal form_to_ideal(const QuadForm& f) const;
    QuadForm ideal_to_form(const FracIdeal& I) const;
    long class_index(const FracIdeal& I) const;
    FracIdeal class_rep_ideal(long i) const;  // form_to_ideal of the reduced form

private:
    const FieldCtx* ctx_;
    std::vector<QuadForm> elements_;
    std::vector<std::vector<long>> table_;
    long id_ = 0;
    AbelianStructure st_;
    std::vector<char> square_;
};

class RayClassGroup {
public:
    RayClassGroup(const ClassGroup& cl, const FracIdeal& modulus);

    const FracIdeal& modulus() const { return m_; }
    const ClassGroup& class_group() const { return *cl_; }
    Int order() const { return order_; }
    const AbelianStructure& structure() const { return st_; }
    // Ideal representative of basis element i (integral, coprime to modulus).
    const FracIdeal& gen_ideal(long i) const { return gen_ideals_[i]; }

    // Exponents of [I] over the basis, for I coprime to the modulus.
    std::vector<long> dlog(const FracIdeal& I) const;
    // alpha with I = prod gen_ideal(i)^{e_i} * (alpha) and alpha = 1 mod m.
    QuadElem ray_witness(const FracIdeal& I, const std::vector<long>& e) const;
    // both at once
    std::pair<std::vector<long>, QuadElem> decompose(const FracIdeal& I) const;

    bool is_coprime(const FracIdeal& I) const;

private:
    struct Elem {
        long cls;       // class index in Cl
        long unit;      // index into unit-coset reps
    };
    long elem_index(const FracIdeal& I) const;
    long unit_coset_of(const QuadElem& residue) const;

    const ClassGroup* cl_;
    FracIdeal m_;
    Int order_;
    std::vector<FracIdeal> class_rep_;           // coprime-to-m rep per class
    std::vector<QuadElem> unit_reps_;            // canonical (O/m)^*/im(O^*) reps
    std::map<std::pair<Int, Int>, long> unit_lookup_;  // residue (x,y) -> coset idx
    std::vector<Elem> elems_;
    std::map<std::pair<long, long>, long> elem_lookup_;
    AbelianStructure st_;
    std::vector<FracIdeal> gen_ideals_;
};

} // namespace eis
