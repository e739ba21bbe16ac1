#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "pcs/padic.hpp"
#include "pcs/phase.hpp"

// Primitive Dirichlet characters mod p^n (n >= 2), represented by the
// smallest primitive root g and an exponent index: chi(g) = e(index/phi(p^n)).
// Evaluation is a discrete-log table lookup, so all phases stay exact.

namespace pcs {

struct NotPrimitive : std::domain_error {
    explicit NotPrimitive(const std::string& what) : std::domain_error(what) {}
};

struct VerificationFailed : std::runtime_error {
    explicit VerificationFailed(const std::string& what) : std::runtime_error(what) {}
};

// Shared per-modulus data: generator and full discrete-log table. Building
// the table costs one pass over the phi(p^n) powers of g; characters to the
// same modulus share it.
class UnitGroup {
  public:
    UnitGroup(u64 p, u64 n);

    u64 p() const { return p_; }
    u64 n() const { return n_; }
    u64 modulus() const { return q_; }
    u64 order() const { return phi_; }
    u64 generator() const { return g_; }

    bool is_unit(u64 x) const { return dlog_[x % q_] != kNonUnit; }
    // Discrete log base g of a unit x mod p^n.
    u64 dlog(u64 x) const {
        u64 d = dlog_[x % q_];
        if (d == kNonUnit) throw DomainError("UnitGroup::dlog: not a unit");
        return d;
    }

  private:
    static constexpr u64 kNonUnit = UINT64_MAX;
    u64 p_, n_, q_, phi_, g_;
    std::vector<u64> dlog_;
};

u64 smallest_primitive_root(u64 p, u64 n);

class DirichletCharacter {
  public:
    DirichletCharacter(u64 p, u64 n, u64 index, bool require_primitive = true)
        : DirichletCharacter(std::make_shared<UnitGroup>(p, n), index, require_primitive) {}

    DirichletCharacter(std::shared_ptr<const UnitGroup> group, u64 index,
                       bool require_primitive = true)
        : group_(std::move(group)), index_(index % group_->order()) {
        if (require_primitive && index_ % group_->p() == 0)
            throw NotPrimitive("DirichletCharacter: p | index induces an imprimitive character");
    }

    u64 p() const { return group_->p(); }
    u64 n() const { return group_->n(); }
    u64 modulus() const { return group_->modulus(); }
    u64 order() const { return group_->order(); }
    u64 index() const { return index_; }
    bool is_primitive() const { return index_ % group_->p() != 0; }
    const UnitGroup& group() const { return *group_; }
    std::shared_ptr<const UnitGroup> group_ptr() const { return group_; }

    DirichletCharacter conjugate() const {
        u64 neg = index_ == 0 ? 0 : group_->order() - index_;
        return DirichletCharacter(group_, neg, false);
    }

    PhaseOrZero operator()(i64 x) const {
        u64 r = reduce(x, modulus());
        if (!group_->is_unit(r)) return PhaseOrZero::zero_value();
        return PhaseOrZero::of(
            UnitPhase{mulmod(index_, group_->dlog(r), group_->order()), group_->order()});
    }

  private:
    std::shared_ptr<const UnitGroup> group_;
    u64 index_;
};

// Postnikov constant a0 mod p^{n-1}: the unit with
// chi(1+pt) = e(a0 log_p(1+pt) / p^n) for every t. Solved from t = 1 and
// verified exhaustively over t in [0, p^{n-1}); throws VerificationFailed
// if any t fails.
u64 postnikov_a0(const DirichletCharacter& chi);

// Dense complex table of chi over a full period, for the brute-force sum
// kernels: entry r is chi(r) as a double pair, 0 when p | r.
std::vector<std::complex<double>> character_table(const DirichletCharacter& chi);

}  // namespace pcs
