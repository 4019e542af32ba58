#include "hindman/cli.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "hindman/errors.hpp"

namespace hindman {

namespace {

// ---------- predicate DSL ----------
// expr    := andterm ('||' andterm)*
// andterm := unary ('&&' unary)*
// unary   := '!' unary | '(' expr ')' | cmp
// cmp     := arith ('==','!=','<','<=','>','>=') arith
// arith   := atom (('+'|'-'|'*'|'%') atom)*      (flat, left-associative)
// atom    := 'n' | decimal | '(' arith ')'
// '-' truncates at 0; '%' takes a nonzero literal on the right.

struct token {
    enum class kind {
        var, num, lparen, rparen, bang, andand, oror,
        plus, minus, star, percent,
        eq, ne, lt, le, gt, ge, end
    };
    kind k = kind::end;
    std::uint64_t value = 0;
    std::size_t col = 0;  // 1-based
};

std::vector<token> lex(const std::string& text) {
    std::vector<token> out;
    std::size_t i = 0;
    auto push = [&](token::kind k, std::size_t col, std::uint64_t v = 0) {
        out.push_back({k, v, col});
    };
    while (i < text.size()) {
        char c = text[i];
        std::size_t col = i + 1;
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c == 'n') {
            if (i + 1 < text.size() &&
                (std::isalnum(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_'))
                throw parse_error("unexpected identifier", col);
            push(token::kind::var, col);
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                std::uint64_t d = static_cast<std::uint64_t>(text[j] - '0');
                if (v > (~std::uint64_t{0} - d) / 10) throw parse_error("number too large", col);
                v = v * 10 + d;
                ++j;
            }
            push(token::kind::num, col, v);
            i = j;
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < text.size() && text[i + 1] == b;
        };
        if (two('=', '=')) { push(token::kind::eq, col); i += 2; continue; }
        if (two('!', '=')) { push(token::kind::ne, col); i += 2; continue; }
        if (two('<', '=')) { push(token::kind::le, col); i += 2; continue; }
        if (two('>', '=')) { push(token::kind::ge, col); i += 2; continue; }
        if (two('&', '&')) { push(token::kind::andand, col); i += 2; continue; }
        if (two('|', '|')) { push(token::kind::oror, col); i += 2; continue; }
        switch (c) {
            case '<': push(token::kind::lt, col); ++i; continue;
            case '>': push(token::kind::gt, col); ++i; continue;
            case '!': push(token::kind::bang, col); ++i; continue;
            case '(': push(token::kind::lparen, col); ++i; continue;
            case ')': push(token::kind::rparen, col); ++i; continue;
            case '+': push(token::kind::plus, col); ++i; continue;
            case '-': push(token::kind::minus, col); ++i; continue;
            case '*': push(token::kind::star, col); ++i; continue;
            case '%': push(token::kind::percent, col); ++i; continue;
            default: throw parse_error("unexpected character", col);
        }
    }
    push(token::kind::end, text.size() + 1);
    return out;
}

class pred_parser {
public:
    explicit pred_parser(std::vector<token> ts) : ts_(std::move(ts)) {}

    pred_expr parse() {
        pred_expr e = expr();
        if (cur().k != token::kind::end) throw parse_error("unexpected trailing input", cur().col);
        return e;
    }

private:
    const token& cur() const { return ts_[pos_]; }

    pred_expr expr() {
        pred_expr l = andterm();
        while (cur().k == token::kind::oror) {
            ++pos_;
            l = pred_expr::disj(l, andterm());
        }
        return l;
    }

    pred_expr andterm() {
        pred_expr l = unary();
        while (cur().k == token::kind::andand) {
            ++pos_;
            l = pred_expr::conj(l, unary());
        }
        return l;
    }

    pred_expr unary() {
        if (cur().k == token::kind::bang) {
            ++pos_;
            return pred_expr::neg(unary());
        }
        if (cur().k == token::kind::lparen) {
            // '(' may open an arithmetic atom or a parenthesized predicate;
            // try the comparison reading first, then backtrack.
            std::size_t save = pos_;
            try {
                return cmp();
            } catch (const parse_error&) {
                pos_ = save;
            }
            ++pos_;
            pred_expr e = expr();
            if (cur().k != token::kind::rparen) throw parse_error("expected ')'", cur().col);
            ++pos_;
            return e;
        }
        return cmp();
    }

    pred_expr cmp() {
        arith_expr l = arith();
        pred_expr::cmp_op op;
        switch (cur().k) {
            case token::kind::eq: op = pred_expr::cmp_op::eq; break;
            case token::kind::ne: op = pred_expr::cmp_op::ne; break;
            case token::kind::lt: op = pred_expr::cmp_op::lt; break;
            case token::kind::le: op = pred_expr::cmp_op::le; break;
            case token::kind::gt: op = pred_expr::cmp_op::gt; break;
            case token::kind::ge: op = pred_expr::cmp_op::ge; break;
            default: throw parse_error("expected a comparison operator", cur().col);
        }
        ++pos_;
        arith_expr r = arith();
        return pred_expr::cmp(op, l, r);
    }

    arith_expr arith() {
        arith_expr l = atom();
        for (;;) {
            arith_expr::kind op;
            switch (cur().k) {
                case token::kind::plus: op = arith_expr::kind::add; break;
                case token::kind::minus: op = arith_expr::kind::sub; break;
                case token::kind::star: op = arith_expr::kind::mul; break;
                case token::kind::percent: op = arith_expr::kind::mod; break;
                default: return l;
            }
            ++pos_;
            if (op == arith_expr::kind::mod) {
                if (cur().k != token::kind::num || cur().value == 0)
                    throw parse_error("modulus must be a nonzero literal", cur().col);
                l = arith_expr::bin(op, l, arith_expr::lit(cur().value));
                ++pos_;
            } else {
                l = arith_expr::bin(op, l, atom());
            }
        }
    }

    arith_expr atom() {
        if (cur().k == token::kind::var) {
            ++pos_;
            return arith_expr::var();
        }
        if (cur().k == token::kind::num) {
            std::uint64_t v = cur().value;
            ++pos_;
            return arith_expr::lit(v);
        }
        if (cur().k == token::kind::lparen) {
            ++pos_;
            arith_expr e = arith();
            if (cur().k != token::kind::rparen) throw parse_error("expected ')'", cur().col);
            ++pos_;
            return e;
        }
        throw parse_error("expected a number, 'n', or '('", cur().col);
    }

    std::vector<token> ts_;
    std::size_t pos_ = 0;
};

std::string join_u64(const std::vector<std::uint64_t>& v) {
    std::ostringstream o;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) o << ',';
        o << v[i];
    }
    return o.str();
}

std::string brace_set(const std::vector<std::size_t>& v) {
    std::ostringstream o;
    o << '{';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) o << ',';
        o << v[i];
    }
    o << '}';
    return o.str();
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        std::string piece = text.substr(i, j - i);
        std::size_t b = piece.find_first_not_of(" \t");
        std::size_t e = piece.find_last_not_of(" \t");
        if (b == std::string::npos) throw input_error("empty entry in number list");
        piece = piece.substr(b, e - b + 1);
        std::uint64_t v = 0;
        for (char c : piece) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw input_error("number list entries must be decimal");
            std::uint64_t d = static_cast<std::uint64_t>(c - '0');
            if (v > (~std::uint64_t{0} - d) / 10) throw input_error("number too large");
            v = v * 10 + d;
        }
        out.push_back(v);
        if (j == text.size()) break;
        i = j + 1;
    }
    if (out.empty()) throw input_error("empty number list");
    return out;
}

std::vector<std::string> split_semis(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(';', i);
        if (j == std::string::npos) j = text.size();
        std::string piece = text.substr(i, j - i);
        std::size_t b = piece.find_first_not_of(" \t");
        std::size_t e = piece.find_last_not_of(" \t");
        if (b == std::string::npos) throw input_error("empty predicate in list");
        out.push_back(piece.substr(b, e - b + 1));
        if (j == text.size()) break;
        i = j + 1;
    }
    return out;
}

}  // namespace

nat_set parse_predicate(const std::string& text) {
    pred_parser p(lex(text));
    return nat_set::predicate(p.parse());
}

coloring load_coloring(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open coloring file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t nl = content.find('\n');
    if (nl == std::string::npos) throw input_error("missing coloring body line");
    std::string header = content.substr(0, nl);
    const std::string prefix = "colors ";
    if (header.compare(0, prefix.size(), prefix) != 0)
        throw input_error("malformed header: expected 'colors k'");
    std::string ks = header.substr(prefix.size());
    if (ks.size() != 1 || ks[0] < '1' || ks[0] > '9')
        throw input_error("color count must be a single digit in [1,9]");
    std::uint32_t k = static_cast<std::uint32_t>(ks[0] - '0');
    std::string body = content.substr(nl + 1);
    if (!body.empty() && body.back() == '\n') body.pop_back();
    if (body.empty()) throw input_error("empty coloring body");
    std::vector<std::uint32_t> assign;
    assign.reserve(body.size());
    for (char c : body) {
        if (c < '0' || c > '9')
            throw input_error(std::string("unexpected byte in coloring body: '") + c + "'");
        std::uint32_t d = static_cast<std::uint32_t>(c - '0');
        if (d == 0 || d > k) throw input_error("digit " + std::to_string(d) + " out of range");
        assign.push_back(d);
    }
    return explicit_coloring(k, std::move(assign));
}

std::string format_policy(const fip_policy& p) {
    std::ostringstream o;
    o << "policy_bound: " << p.bound << "\n";
    o << "policy_count: " << p.min_count << "\n";
    o << "policy_tail: " << p.tail_fraction << "\n";
    o << "policy_fmax: " << p.max_part << "\n";
    o << "policy_inst: " << p.max_instance << "\n";
    return o.str();
}

std::string format_fip(const std::string& key, const fip_report& r) {
    std::ostringstream o;
    o << key << ": " << to_string(r.v) << "\n";
    if (!r.witnesses.empty()) {
        const auto& w = r.witnesses.front();
        o << key << "_part: " << brace_set(w.part) << "\n";
        o << key << "_count: " << w.count << "\n";
        if (w.max_element) o << key << "_max: " << *w.max_element << "\n";
    }
    return o.str();
}

std::string format_tilde(const std::string& key, const tilde_result& t) {
    std::ostringstream o;
    o << key << ": " << to_string(t.v) << "\n";
    if (t.v == verdict::verified_at_bound) o << key << "_f: " << brace_set(t.witness) << "\n";
    if (t.counterexample) o << key << "_cx: " << *t.counterexample << "\n";
    return o.str();
}

std::string format_decision(const std::string& shown, const decision& d, const nat_set& a) {
    std::ostringstream o;
    o << "command: decide\n";
    o << "predicate: " << shown << "\n";
    o << "side: " << (d.side_a ? "A" : "Ac") << "\n";
    if (d.witness) {
        o << "witness: " << join_u64(d.witness->s) << "\n";
        o << "witness_sums: " << join_u64(d.witness->sums) << "\n";
        o << "witness_verified: " << (verify_witness(a, d.witness->s) ? "yes" : "no") << "\n";
    }
    if (d.refutation) o << format_fip("refutation", *d.refutation);
    o << format_tilde("certificate", d.certificate);
    o << "nodes: " << d.stats.nodes_expanded << "\n";
    o << "scanned: " << d.stats.candidates_scanned << "\n";
    o << "closings: " << d.stats.closings << "\n";
    o << "depth: " << d.stats.max_depth << "\n";
    o << format_policy(d.policy);
    return o.str();
}

std::string format_sum_witness(const coloring& c, const sum_witness& w, const fip_policy& p) {
    std::ostringstream o;
    o << "command: hindman\n";
    o << "colors: " << c.k << "\n";
    o << "domain: ";
    if (c.symbolic)
        o << "symbolic\n";
    else
        o << c.n << "\n";
    o << "witness: " << join_u64(w.s) << "\n";
    o << "witness_color: " << w.color << "\n";
    o << "witness_sums: " << join_u64(w.sums) << "\n";
    o << "witness_verified: " << (verify_witness(c, w.color, w.s) ? "yes" : "no") << "\n";
    o << format_policy(p);
    return o.str();
}

std::string format_no_witness(const coloring& c, int oracle_cross, const fip_policy& p) {
    std::ostringstream o;
    o << "command: hindman\n";
    o << "colors: " << c.k << "\n";
    o << "domain: ";
    if (c.symbolic)
        o << "symbolic\n";
    else
        o << c.n << "\n";
    o << "witness: none\n";
    o << "oracle_confirms: " << (oracle_cross == 1 ? "yes" : oracle_cross == 0 ? "no" : "n/a")
      << "\n";
    o << format_policy(p);
    return o.str();
}

std::string format_iterated(const std::vector<std::string>& shown, const iterated_decision& d,
                            const std::vector<nat_set>& as) {
    std::ostringstream o;
    o << "command: iterated\n";
    o << "predicates: ";
    for (std::size_t i = 0; i < shown.size(); ++i) {
        if (i) o << "; ";
        o << shown[i];
    }
    o << "\n";
    o << "witness: " << join_u64(d.witness.s) << "\n";
    o << "signs: ";
    for (std::size_t i = 0; i < d.witness.signs.size(); ++i) {
        if (i) o << ',';
        o << (d.witness.signs[i] > 0 ? "+1" : "-1");
    }
    o << "\n";
    for (std::size_t i = 0; i < d.witness.certificates.size(); ++i) {
        const auto& c = d.witness.certificates[i];
        std::string k = "suffix_" + std::to_string(i + 1);
        o << k << ": " << join_u64(c.suffix) << "\n";
        o << k << "_sign: " << (c.sign > 0 ? "+1" : "-1") << "\n";
        o << k << "_sums: " << join_u64(c.sums) << "\n";
        o << k << "_exact: " << (c.exact ? "yes" : "no") << "\n";
        nat_set target = signed_set(as.at(c.set_index), c.sign);
        o << k << "_verified: " << (verify_witness(target, c.suffix) ? "yes" : "no") << "\n";
    }
    for (std::size_t i = 0; i < d.witness.tilde_certs.size(); ++i)
        o << format_tilde("tilde_" + std::to_string(i + 1), d.witness.tilde_certs[i]);
    o << "nodes: " << d.stats.nodes_expanded << "\n";
    o << "scanned: " << d.stats.candidates_scanned << "\n";
    o << "depth: " << d.stats.max_depth << "\n";
    o << format_policy(d.policy);
    return o.str();
}

std::string format_forcing(const forcing_result& r) {
    std::ostringstream o;
    o << "command: oracle-minbound\n";
    o << "colors: " << r.k << "\n";
    o << "size: " << r.m << "\n";
    o << "max: " << r.n_max << "\n";
    o << "min_n: ";
    if (r.min_n)
        o << *r.min_n << "\n";
    else
        o << "none\n";
    o << "extremal_n: " << r.extremal_n << "\n";
    o << "extremal: " << (r.extremal_digits.empty() ? "none" : r.extremal_digits) << "\n";
    o << format_policy(fip_policy{});
    return o.str();
}

std::string format_semigroup(const std::string& name, const semigroup_report& r) {
    std::ostringstream o;
    o << "command: check-family\n";
    o << "family: " << name << "\n";
    o << "overall: " << to_string(r.overall) << "\n";
    o << format_fip("fip", r.fip);
    o << "items: " << r.items.size() << "\n";
    for (const auto& e : r.items) {
        o << "item_" << e.item << ": " << e.label << " " << to_string(e.v);
        if (e.v == verdict::verified_at_bound) o << " y=" << brace_set(e.witness_y);
        if (e.counterexample) o << " cx=" << *e.counterexample;
        o << "\n";
    }
    o << format_policy(r.fip.policy);
    return o.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bounded finite-sums certificates over symbolic sets of naturals"};
    app.require_subcommand(1);

    struct policy_flags {
        std::uint64_t bound = 10000;
        std::uint64_t count = 8;
        double tail = 0.5;
        std::uint32_t fmax = 3;
        std::uint64_t inst = 64;
    };
    auto add_policy = [](CLI::App* sub, policy_flags& f) {
        sub->add_option("--bound", f.bound, "evaluation window bound");
        sub->add_option("--count", f.count, "minimum intersection count");
        sub->add_option("--tail", f.tail, "tail fraction in (0,1]");
        sub->add_option("--fmax", f.fmax, "maximum part size");
        sub->add_option("--inst", f.inst, "schema instance range");
    };
    auto to_policy = [](const policy_flags& f) {
        fip_policy p{f.bound, f.count, f.tail, f.fmax, f.inst};
        p.validate();
        return p;
    };

    std::string set_arg, pred_arg, coloring_arg, witness_arg, preds_arg, builtin_arg;
    std::uint32_t size_arg = 0, colors_arg = 0, color_arg = 0, jobs_arg = 1;
    std::uint64_t max_arg = 0;
    policy_flags fdec, fhin, fit, fcf;

    auto* sfs = app.add_subcommand("fs", "finite sums of an explicit set");
    sfs->add_option("--set", set_arg, "comma-separated elements")->required();

    auto* sdec = app.add_subcommand("decide", "decide a set or its complement with certificates");
    sdec->add_option("--pred", pred_arg, "membership predicate")->required();
    sdec->add_option("--size", size_arg, "witness length")->required();
    add_policy(sdec, fdec);

    auto* shin = app.add_subcommand("hindman", "monochromatic sums witness for a coloring file");
    shin->add_option("--coloring", coloring_arg, "coloring file")->required();
    shin->add_option("--size", size_arg, "witness length")->required();
    add_policy(shin, fhin);

    auto* sit = app.add_subcommand("iterated", "signed witness across several sets");
    sit->add_option("--preds", preds_arg, "semicolon-separated predicates")->required();
    sit->add_option("--size", size_arg, "witness length")->required();
    add_policy(sit, fit);

    auto* sor = app.add_subcommand("oracle-minbound", "least domain forcing a witness");
    sor->add_option("--colors", colors_arg, "number of colors")->required();
    sor->add_option("--size", size_arg, "witness length")->required();
    sor->add_option("--max", max_arg, "domain cap")->required();
    sor->add_option("--jobs", jobs_arg, "worker threads");

    auto* sver = app.add_subcommand("verify", "check a witness against a coloring");
    sver->add_option("--coloring", coloring_arg, "coloring file")->required();
    sver->add_option("--witness", witness_arg, "comma-separated elements")->required();
    sver->add_option("--color", color_arg, "1-based color")->required();

    auto* scf = app.add_subcommand("check-family", "fip and semigroup report for a builtin");
    scf->add_option("--builtin", builtin_arg, "frechet or trivial")
        ->required()
        ->check(CLI::IsMember({"frechet", "trivial"}));
    add_policy(scf, fcf);

    try {
        std::vector<std::string> full;
        full.reserve(args.size() + 1);
        full.push_back("hindman");
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        argv.reserve(full.size());
        for (const auto& s : full) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 4;
    }

    try {
        if (*sfs) {
            auto v = parse_uint_list(set_arg);
            out << "FS: " << join_u64(finite_sums(v)) << " / NS: " << join_u64(nonempty_sums(v))
                << "\n";
            return 0;
        }
        if (*sdec) {
            fip_policy p = to_policy(fdec);
            nat_set a = parse_predicate(pred_arg);
            decision d = extend_decide(trivial_family(), a, size_arg, p);
            out << format_decision(pred_arg, d, a);
            return 0;
        }
        if (*shin) {
            fip_policy p = to_policy(fhin);
            coloring c = load_coloring(coloring_arg);
            try {
                sum_witness w = hindman_witness(c, size_arg, p);
                out << format_sum_witness(c, w, p);
                return 0;
            } catch (const no_witness_at_bound& e) {
                out << format_no_witness(c, e.oracle_cross_check, p);
                return 2;
            }
        }
        if (*sit) {
            fip_policy p = to_policy(fit);
            auto pieces = split_semis(preds_arg);
            std::vector<nat_set> as;
            for (const auto& piece : pieces) as.push_back(parse_predicate(piece));
            iterated_decision d = iterated_decide(trivial_family(), as, size_arg, p);
            out << format_iterated(pieces, d, as);
            return 0;
        }
        if (*sor) {
            forcing_result r = min_forcing_bound(colors_arg, size_arg, max_arg, jobs_arg);
            out << format_forcing(r);
            return 0;
        }
        if (*sver) {
            coloring c = load_coloring(coloring_arg);
            auto s = parse_uint_list(witness_arg);
            if (verify_witness(c, color_arg, s)) {
                out << "verified: NS={" << join_u64(nonempty_sums(s)) << "} ⊆ C_" << color_arg
                    << "\n";
                return 0;
            }
            // Reconstruct the first failure for the diagnostic.
            std::string why = "witness must be strictly increasing and positive";
            bool shape_ok = !s.empty();
            for (std::size_t i = 0; shape_ok && i < s.size(); ++i)
                if (s[i] == 0 || (i > 0 && s[i] <= s[i - 1])) shape_ok = false;
            if (shape_ok) {
                for (std::uint64_t t : nonempty_sums(s)) {
                    bool in = c.symbolic ? c.classes[color_arg - 1].member(t)
                                         : (t <= c.n && c.assign[t - 1] == color_arg);
                    if (!in) {
                        why = "sum " + std::to_string(t) + " is not color " +
                              std::to_string(color_arg);
                        break;
                    }
                }
            }
            out << "not verified: " << why << "\n";
            return 2;
        }
        if (*scf) {
            fip_policy p = to_policy(fcf);
            family u = builtin_arg == "frechet" ? frechet_family() : trivial_family();
            semigroup_report r = check_semigroup(u, p);
            out << format_semigroup(builtin_arg, r);
            return 0;
        }
    } catch (const budget_exhausted& e) {
        err << "budget exhausted: " << e.what() << " (nodes=" << e.nodes_expanded
            << ", scanned=" << e.candidates_scanned << ", depth=" << e.max_depth << ")\n";
        return 3;
    } catch (const no_witness_at_bound& e) {
        err << "no witness at bound: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        err << "syntax error: " << e.what() << "\n";
        return 4;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return 4;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
    return 4;
}

}  // namespace hindman
