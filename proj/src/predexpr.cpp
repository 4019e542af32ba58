#include "hindman/predexpr.hpp"

#include <limits>
#include <variant>

#include "hindman/errors.hpp"

namespace hindman {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

const char* arith_op_text(arith_expr::kind k) {
    switch (k) {
        case arith_expr::kind::add: return " + ";
        case arith_expr::kind::sub: return " - ";
        case arith_expr::kind::mul: return " * ";
        case arith_expr::kind::mod: return " % ";
        default: return "?";
    }
}

const char* cmp_op_text(pred_expr::cmp_op op) {
    switch (op) {
        case pred_expr::cmp_op::eq: return " == ";
        case pred_expr::cmp_op::ne: return " != ";
        case pred_expr::cmp_op::lt: return " < ";
        case pred_expr::cmp_op::le: return " <= ";
        case pred_expr::cmp_op::gt: return " > ";
        case pred_expr::cmp_op::ge: return " >= ";
    }
    return "?";
}

}  // namespace

struct arith_expr::node {
    kind k;
    std::uint64_t value = 0;  // for lit
    std::shared_ptr<const node> l, r;
};

arith_expr arith_expr::var() {
    arith_expr e;
    e.node_ = std::make_shared<node>(node{kind::var, 0, nullptr, nullptr});
    return e;
}

arith_expr arith_expr::lit(std::uint64_t v) {
    arith_expr e;
    e.node_ = std::make_shared<node>(node{kind::lit, v, nullptr, nullptr});
    return e;
}

arith_expr arith_expr::bin(kind op, arith_expr l, arith_expr r) {
    if (op == kind::mod) {
        // Divisors must be nonzero literals so evaluation is total.
        if (r.node_->k != kind::lit || r.node_->value == 0)
            throw input_error("'%' needs a nonzero literal divisor");
    }
    arith_expr e;
    e.node_ = std::make_shared<node>(node{op, 0, l.node_, r.node_});
    return e;
}

std::uint64_t arith_expr::eval(std::uint64_t n) const {
    const node* p = node_.get();
    switch (p->k) {
        case kind::var: return n;
        case kind::lit: return p->value;
        default: break;
    }
    arith_expr le, re;
    le.node_ = p->l;
    re.node_ = p->r;
    std::uint64_t l = le.eval(n), r = re.eval(n);
    switch (p->k) {
        case kind::add: return sat_add(l, r);
        case kind::sub: return l > r ? l - r : 0;  // truncating monus
        case kind::mul: return sat_mul(l, r);
        case kind::mod: return l % r;  // r nonzero by construction
        default: return 0;
    }
}

std::string arith_expr::to_string() const {
    const node* p = node_.get();
    switch (p->k) {
        case kind::var: return "n";
        case kind::lit: return std::to_string(p->value);
        default: break;
    }
    arith_expr le, re;
    le.node_ = p->l;
    re.node_ = p->r;
    return "(" + le.to_string() + arith_op_text(p->k) + re.to_string() + ")";
}

struct pred_expr::node {
    enum class kind { cmp, conj, disj, neg } k;
    cmp_op op = cmp_op::eq;
    arith_expr al, ar;            // for cmp
    std::shared_ptr<const node> l, r;  // for conj/disj/neg
};

pred_expr pred_expr::cmp(cmp_op op, arith_expr l, arith_expr r) {
    pred_expr p;
    p.node_ = std::make_shared<node>(node{node::kind::cmp, op, l, r, nullptr, nullptr});
    return p;
}

pred_expr pred_expr::conj(pred_expr l, pred_expr r) {
    pred_expr p;
    p.node_ = std::make_shared<node>(
        node{node::kind::conj, cmp_op::eq, arith_expr::lit(0), arith_expr::lit(0), l.node_, r.node_});
    return p;
}

pred_expr pred_expr::disj(pred_expr l, pred_expr r) {
    pred_expr p;
    p.node_ = std::make_shared<node>(
        node{node::kind::disj, cmp_op::eq, arith_expr::lit(0), arith_expr::lit(0), l.node_, r.node_});
    return p;
}

pred_expr pred_expr::neg(pred_expr q) {
    pred_expr p;
    p.node_ = std::make_shared<node>(
        node{node::kind::neg, cmp_op::eq, arith_expr::lit(0), arith_expr::lit(0), q.node_, nullptr});
    return p;
}

bool pred_expr::eval(std::uint64_t n) const {
    const node* p = node_.get();
    switch (p->k) {
        case node::kind::cmp: {
            std::uint64_t l = p->al.eval(n), r = p->ar.eval(n);
            switch (p->op) {
                case cmp_op::eq: return l == r;
                case cmp_op::ne: return l != r;
                case cmp_op::lt: return l < r;
                case cmp_op::le: return l <= r;
                case cmp_op::gt: return l > r;
                case cmp_op::ge: return l >= r;
            }
            return false;
        }
        case node::kind::conj:
        case node::kind::disj: {
            pred_expr le, re;
            le.node_ = p->l;
            re.node_ = p->r;
            return p->k == node::kind::conj ? (le.eval(n) && re.eval(n))
                                            : (le.eval(n) || re.eval(n));
        }
        case node::kind::neg: {
            pred_expr q;
            q.node_ = p->l;
            return !q.eval(n);
        }
    }
    return false;
}

std::string pred_expr::to_string() const {
    const node* p = node_.get();
    switch (p->k) {
        case node::kind::cmp:
            return "(" + p->al.to_string() + cmp_op_text(p->op) + p->ar.to_string() + ")";
        case node::kind::conj:
        case node::kind::disj: {
            pred_expr le, re;
            le.node_ = p->l;
            re.node_ = p->r;
            const char* op = p->k == node::kind::conj ? " && " : " || ";
            return "(" + le.to_string() + op + re.to_string() + ")";
        }
        case node::kind::neg: {
            pred_expr q;
            q.node_ = p->l;
            return "!" + q.to_string();
        }
    }
    return "?";
}

}  // namespace hindman
