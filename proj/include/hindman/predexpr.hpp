#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace hindman {

// Arithmetic expressions over the single variable n.  Subtraction truncates
// at 0; addition and multiplication saturate at the uint64 maximum so that
// evaluation is total at every natural.  '%' divisors are nonzero literals,
// enforced at parse/build time.
class arith_expr {
public:
    enum class kind { var, lit, add, sub, mul, mod };

    static arith_expr var();
    static arith_expr lit(std::uint64_t v);
    static arith_expr bin(kind op, arith_expr l, arith_expr r);

    std::uint64_t eval(std::uint64_t n) const;
    std::string to_string() const;

private:
    struct node;
    std::shared_ptr<const node> node_;
};

// Boolean predicate over n: comparisons of arithmetic expressions combined
// with &&, ||, !.
class pred_expr {
public:
    enum class cmp_op { eq, ne, lt, le, gt, ge };

    static pred_expr cmp(cmp_op op, arith_expr l, arith_expr r);
    static pred_expr conj(pred_expr l, pred_expr r);
    static pred_expr disj(pred_expr l, pred_expr r);
    static pred_expr neg(pred_expr p);

    bool eval(std::uint64_t n) const;
    std::string to_string() const;

private:
    struct node;
    std::shared_ptr<const node> node_;
};

}  // namespace hindman
