#include "piq/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "piq/algebra.hpp"
#include "piq/identity.hpp"
#include "piq/kaplansky.hpp"
#include "piq/linearize.hpp"
#include "piq/multalg.hpp"
#include "piq/ncpoly.hpp"
#include "piq/posner.hpp"

namespace piq::cli {

namespace {

StructureAlgebra parse_algebra_selector(const std::string& selector) {
    auto colon = selector.find(':');
    const std::string head = selector.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : selector.substr(colon + 1);
    auto int_arg = [&](const char* what) {
        try {
            std::size_t used = 0;
            int v = std::stoi(arg, &used);
            if (used != arg.size() || v <= 0) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument(std::string("algebra selector '") + selector +
                                        "': expected a positive integer " + what);
        }
    };
    if (head == "matn") return matrix_algebra(int_arg("matrix size"));
    if (head == "quaternion") return quaternion_algebra();
    if (head == "zeromult") return zero_mult_algebra(int_arg("dimension"));
    if (head == "uppertri") return upper_triangular_algebra(int_arg("matrix size"));
    if (head == "file") return load_algebra_file(arg);
    throw std::invalid_argument("unknown algebra selector '" + selector +
                                "' (use matn:K, quaternion, zeromult:K, uppertri:K, "
                                "file:PATH)");
}

std::string format_assignment(const std::vector<Var>& slots,
                              const std::vector<int>& tuple) {
    std::ostringstream os;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << ", ";
        os << "x" << slots[i] << "=e" << (tuple[i] + 1);
    }
    return os.str();
}

std::string format_coords(const std::vector<Rat>& coords) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ", ";
        os << to_string(coords[i]);
    }
    os << ")";
    return os.str();
}

std::string machine_tuple(const std::vector<int>& tuple) {
    std::ostringstream os;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << ",";
        os << (tuple[i] + 1);
    }
    return os.str();
}

// "(c1,...,cn),(c1,...,cn);(...),(...)": pair list for operator input.
MultOperator::Pairs parse_pair_list(const StructureAlgebra& alg,
                                    const std::string& text) {
    MultOperator::Pairs pairs;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_element = [&]() {
        skip_ws();
        if (i >= text.size() || text[i] != '(')
            throw std::invalid_argument("pair list: expected '(' at position " +
                                        std::to_string(i));
        ++i;
        std::vector<Rat> coords;
        for (;;) {
            skip_ws();
            std::size_t start = i;
            while (i < text.size() && text[i] != ',' && text[i] != ')') ++i;
            std::size_t end = i;
            while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1])))
                --end;
            coords.push_back(parse_rational(
                std::string_view(text).substr(start, end - start)));
            if (i >= text.size())
                throw std::invalid_argument("pair list: unterminated element");
            if (text[i] == ')') {
                ++i;
                break;
            }
            ++i;  // ','
        }
        if (static_cast<int>(coords.size()) != alg.dim())
            throw std::invalid_argument("pair list: element has " +
                                        std::to_string(coords.size()) +
                                        " coordinates, algebra dimension is " +
                                        std::to_string(alg.dim()));
        return Element(alg, std::move(coords));
    };
    for (;;) {
        Element a = parse_element();
        skip_ws();
        if (i >= text.size() || text[i] != ',')
            throw std::invalid_argument("pair list: expected ',' between elements");
        ++i;
        Element b = parse_element();
        pairs.emplace_back(std::move(a), std::move(b));
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != ';')
            throw std::invalid_argument("pair list: expected ';' between pairs");
        ++i;
    }
    return pairs;
}

// Deterministic RNG (stable across platforms, unlike <random> distributions).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform-ish in [lo, hi]; the slight modulo bias is irrelevant here.
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

Element random_element(const StructureAlgebra& alg, SplitMix64& rng) {
    std::vector<Rat> coords(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) coords[i] = rat(rng.range(-3, 3));
    return Element(alg, std::move(coords));
}

struct SharedFlags {
    std::string algebra;
    std::string poly;
    std::string format = "text";
    int threads = 1;
};

bool machine(const SharedFlags& flags) { return flags.format == "machine"; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact polynomial-identity toolkit for finite-dimensional "
                 "rational algebras"};
    app.require_subcommand(1);

    SharedFlags flags;
    bool no_fast_path = false;
    unsigned degree = 0;
    unsigned cap = 0;
    std::string lhs_text, rhs_text;
    int instances = 100;
    std::uint64_t seed = 1;
    int posner_n = 0;
    std::vector<std::string> generator_texts;
    std::string quotient_text;

    auto add_shared = [&](CLI::App* sub, bool needs_algebra, bool needs_poly) {
        auto* a = sub->add_option("--algebra", flags.algebra,
                                  "algebra selector: matn:K, quaternion, zeromult:K, "
                                  "uppertri:K, file:PATH");
        if (needs_algebra) a->required();
        auto* p = sub->add_option("--poly", flags.poly, "polynomial, e.g. 'St(4)'");
        if (needs_poly) p->required();
        sub->add_option("--format", flags.format, "text or machine")
            ->check(CLI::IsMember({"text", "machine"}));
        sub->add_option("--threads", flags.threads, "worker threads for tuple scans")
            ->check(CLI::PositiveNumber);
    };

    auto* check_identity_cmd =
        app.add_subcommand("check-identity", "test whether a polynomial is an "
                                             "identity of an algebra");
    add_shared(check_identity_cmd, true, true);
    check_identity_cmd->add_flag("--no-fast-path", no_fast_path,
                                 "disable the alternating fast path");

    auto* multilinearize_cmd =
        app.add_subcommand("multilinearize", "multilinearize a polynomial");
    add_shared(multilinearize_cmd, false, true);

    auto* multdim_cmd = app.add_subcommand(
        "multdim", "dimension of the multiplication algebra span{L_ei R_ej}");
    add_shared(multdim_cmd, true, false);

    auto* central_simple_cmd = app.add_subcommand(
        "central-simple", "test whether the algebra is central simple");
    add_shared(central_simple_cmd, true, false);

    auto* central_poly_cmd = app.add_subcommand(
        "central-poly", "test whether a polynomial is central on the algebra");
    add_shared(central_poly_cmd, true, true);

    auto* identity_space_cmd = app.add_subcommand(
        "identity-space", "basis of the multilinear identities of one degree");
    add_shared(identity_space_cmd, true, false);
    identity_space_cmd->add_option("--degree", degree, "multilinear degree m")
        ->required()
        ->check(CLI::PositiveNumber);

    auto* min_degree_cmd = app.add_subcommand(
        "min-degree", "least degree with a nonzero multilinear identity");
    add_shared(min_degree_cmd, true, false);
    min_degree_cmd->add_option("--cap", cap, "search cap (default dim^2 + 1)");

    auto* ljerry_cmd = app.add_subcommand(
        "ljerry", "verify the span conclusion for an operator identity "
                  "sum a_i x b_i = sum c_j x d_j");
    add_shared(ljerry_cmd, true, false);
    ljerry_cmd->add_option("--lhs", lhs_text,
                           "pairs '(a),(b);(a),(b)' with coordinate tuples");
    ljerry_cmd->add_option("--rhs", rhs_text, "pairs for the right-hand side");
    ljerry_cmd->add_option("--random", instances,
                           "run N randomized valid-precondition instances");
    ljerry_cmd->add_option("--seed", seed, "seed for --random");

    auto* witness_cmd = app.add_subcommand(
        "witness", "extract a finite-rank witness operator from a multilinear "
                   "identity of a central simple algebra");
    add_shared(witness_cmd, true, true);

    auto* posner_cmd = app.add_subcommand(
        "posner", "integer matrix-ring demonstrations: ideal gcd form, central "
                  "ideal witness, z^-1 r form");
    posner_cmd->add_option("--n", posner_n, "matrix size for --gen");
    posner_cmd
        ->add_option("--gen", generator_texts,
                     "ideal generator '[[a,b],[c,d]]' (repeatable)")
        ->allow_extra_args(false);  // keep '[[...]]' tokens whole
    posner_cmd->add_option("--quotient", quotient_text,
                           "rational matrix to rewrite as z^-1 r");
    posner_cmd->add_option("--format", flags.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    IdentityOptions opts;
    opts.threads = flags.threads;
    opts.alternating_fast_path = !no_fast_path;

    try {
        if (check_identity_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            NcPoly f = parse_poly(flags.poly);
            IdentityVerdict verdict = check_identity(alg, f, opts);
            if (machine(flags)) {
                out << "algebra=" << alg.label() << "\n";
                out << "poly=" << format_poly(f) << "\n";
                out << "result=" << (verdict.identity ? "identity" : "not_identity")
                    << "\n";
                if (!verdict.identity) {
                    if (*verdict.failed_multilinear != f)
                        out << "failed_multilinear="
                            << format_poly(*verdict.failed_multilinear) << "\n";
                    out << "counterexample="
                        << machine_tuple(verdict.detail.counterexample) << "\n";
                    out << "value=" << format_coords(verdict.detail.value) << "\n";
                }
            } else if (verdict.identity) {
                out << "IDENTITY\n";
            } else {
                out << "NOT IDENTITY\n";
                if (*verdict.failed_multilinear != f)
                    out << "failing multilinearization: "
                        << format_poly(*verdict.failed_multilinear) << "\n";
                WordEvaluator ev(alg, *verdict.failed_multilinear);
                out << "counterexample: "
                    << format_assignment(ev.slots(), verdict.detail.counterexample)
                    << "\n";
                out << "value: " << format_coords(verdict.detail.value) << "\n";
            }
            return verdict.identity ? 0 : 1;
        }

        if (multilinearize_cmd->parsed()) {
            NcPoly f = parse_poly(flags.poly);
            NcPoly g = multilinearize(f);
            if (machine(flags))
                out << "result=" << format_poly(g) << "\n";
            else
                out << format_poly(g) << "\n";
            return 0;
        }

        if (multdim_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            const int d = mult_algebra_dim(alg);
            const int full = alg.dim() * alg.dim();
            if (machine(flags)) {
                out << "algebra=" << alg.label() << "\n";
                out << "mult_dim=" << d << "\n";
                out << "algebra_dim=" << alg.dim() << "\n";
                out << "full=" << (d == full ? "true" : "false") << "\n";
            } else {
                out << "dim M(A) = " << d << " (dim A = " << alg.dim()
                    << ", full endomorphism algebra: " << (d == full ? "yes" : "no")
                    << ")\n";
            }
            return 0;
        }

        if (central_simple_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            const int d = mult_algebra_dim(alg);
            const int full = alg.dim() * alg.dim();
            const bool central_simple = alg.has_unit() && d == full;
            if (machine(flags)) {
                out << "algebra=" << alg.label() << "\n";
                out << "central_simple=" << (central_simple ? "true" : "false") << "\n";
                out << "mult_dim=" << d << "\n";
            } else if (central_simple) {
                out << "CENTRAL SIMPLE\n";
            } else if (!alg.has_unit()) {
                out << "NOT CENTRAL SIMPLE (no unit)\n";
            } else {
                out << "NOT CENTRAL SIMPLE (dim M(A) = " << d << " < " << full
                    << ")\n";
            }
            return central_simple ? 0 : 1;
        }

        if (central_poly_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            NcPoly f = parse_poly(flags.poly);
            CentralPolyVerdict verdict = central_polynomial_verdict(alg, f, opts);
            if (machine(flags)) {
                out << "algebra=" << alg.label() << "\n";
                out << "central="
                    << (verdict == CentralPolyVerdict::Central ? "true" : "false")
                    << "\n";
                out << "reason="
                    << (verdict == CentralPolyVerdict::Central        ? "ok"
                        : verdict == CentralPolyVerdict::IsIdentity ? "identity"
                                                                    : "noncentral_value")
                    << "\n";
            } else if (verdict == CentralPolyVerdict::Central) {
                out << "CENTRAL POLYNOMIAL\n";
            } else if (verdict == CentralPolyVerdict::IsIdentity) {
                out << "NOT CENTRAL: the polynomial is an identity\n";
            } else {
                out << "NOT CENTRAL: the polynomial takes a noncentral value\n";
            }
            return verdict == CentralPolyVerdict::Central ? 0 : 1;
        }

        if (identity_space_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            std::vector<NcPoly> basis = identity_space(alg, degree);
            if (machine(flags)) {
                out << "algebra=" << alg.label() << "\n";
                out << "degree=" << degree << "\n";
                out << "dimension=" << basis.size() << "\n";
                for (std::size_t i = 0; i < basis.size(); ++i)
                    out << "basis_" << (i + 1) << "=" << format_poly(basis[i]) << "\n";
            } else {
                out << "dimension: " << basis.size() << "\n";
                for (std::size_t i = 0; i < basis.size(); ++i)
                    out << "basis[" << (i + 1) << "]: " << format_poly(basis[i])
                        << "\n";
            }
            return 0;
        }

        if (min_degree_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            try {
                unsigned m = min_multilinear_identity_degree(alg, cap);
                if (machine(flags))
                    out << "min_degree=" << m << "\n";
                else
                    out << "minimal multilinear identity degree: " << m << "\n";
                return 0;
            } catch (const DegreeCapExceeded& e) {
                if (machine(flags))
                    out << "min_degree=none\ncap=" << e.cap << "\n";
                else
                    out << "no nonzero multilinear identity up to degree " << e.cap
                        << "\n";
                return 1;
            }
        }

        if (ljerry_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            if (!lhs_text.empty() || !rhs_text.empty()) {
                if (lhs_text.empty() || rhs_text.empty())
                    throw std::invalid_argument("--lhs and --rhs must be given together");
                MultOperator::Pairs lhs = parse_pair_list(alg, lhs_text);
                MultOperator::Pairs rhs = parse_pair_list(alg, rhs_text);
                MartindaleReport report = verify_martindale(alg, lhs, rhs);
                if (machine(flags)) {
                    out << "status="
                        << (report.ok()
                                ? "ok"
                                : report.status == MartindaleStatus::NotCentralSimple
                                      ? "not_central_simple"
                                  : report.status ==
                                          MartindaleStatus::DependentLeftElements
                                      ? "dependent_lhs"
                                  : report.status == MartindaleStatus::OperatorMismatch
                                      ? "operator_mismatch"
                                      : "span_counterexample")
                        << "\n";
                    for (std::size_t i = 0; i < report.expansion.size(); ++i)
                        out << "expansion_" << (i + 1) << "="
                            << format_coords(report.expansion[i]) << "\n";
                } else if (report.ok()) {
                    out << "SPAN CONCLUSION HOLDS\n";
                    for (std::size_t i = 0; i < report.expansion.size(); ++i)
                        out << "b_" << (i + 1) << " = coefficients "
                            << format_coords(report.expansion[i]) << " over the d_j\n";
                } else {
                    out << "PRECONDITION FAILED: " << report.detail << "\n";
                }
                if (report.ok()) return 0;
                return report.status == MartindaleStatus::SpanCounterexample ? 1 : 2;
            }
            // Randomized suite: independent left elements, arbitrary rights;
            // the right-hand side is the basis-pair re-expansion of the same
            // operator, so the preconditions hold by construction.
            SplitMix64 rng(seed);
            int failures = 0;
            for (int inst = 0; inst < instances; ++inst) {
                const int t = static_cast<int>(rng.range(1, std::min(3, alg.dim())));
                MultOperator::Pairs lhs;
                RowSpace span(alg.dim());
                while (static_cast<int>(lhs.size()) < t) {
                    Element a = random_element(alg, rng);
                    if (!span.add(a.coords())) continue;
                    lhs.emplace_back(std::move(a), random_element(alg, rng));
                }
                MultOperator op = MultOperator::from_pairs(alg, lhs);
                MultOperator::Pairs rhs = express_over_basis_pairs(alg, op);
                MartindaleReport report = verify_martindale(alg, lhs, rhs);
                if (!report.ok()) {
                    ++failures;
                    err << "instance " << (inst + 1) << ": " << report.detail << "\n";
                }
            }
            if (machine(flags)) {
                out << "instances=" << instances << "\n";
                out << "failures=" << failures << "\n";
            } else {
                out << instances << " randomized instances, " << failures
                    << " failures\n";
            }
            return failures == 0 ? 0 : 1;
        }

        if (witness_cmd->parsed()) {
            StructureAlgebra alg = parse_algebra_selector(flags.algebra);
            NcPoly f = parse_poly(flags.poly);
            FiniteRankWitness w = finite_rank_witness(alg, f);
            if (machine(flags)) {
                out << "algebra=" << alg.label() << "\n";
                out << "pair=x" << w.x_var << ",x" << w.y_var << "\n";
                out << "assignment=" << machine_tuple(w.assignment) << "\n";
                out << "operator=" << w.V.matrix().to_string() << "\n";
                out << "rank=" << operator_rank(w.V) << "\n";
                out << "span_size=" << w.D.size() << "\n";
                for (std::size_t i = 0; i < w.D.size(); ++i)
                    out << "d_" << (i + 1) << "=" << w.D[i].to_string() << "\n";
                out << "range_in_span=true\n";
            } else {
                out << "variable pair: (x" << w.x_var << ", x" << w.y_var << ")\n";
                out << "frozen assignment: "
                    << format_assignment(w.slots, w.assignment) << "\n";
                out << "descent steps: " << w.descent_steps << "\n";
                out << "witness operator V = " << w.V.matrix().to_string() << "\n";
                out << "rank(V) = " << operator_rank(w.V) << "\n";
                out << "span elements (" << w.D.size() << "):\n";
                for (std::size_t i = 0; i < w.D.size(); ++i)
                    out << "  d_" << (i + 1) << " = " << w.D[i].to_string() << "\n";
                out << "verified: V != 0 and range(V) inside span(D)\n";
            }
            return 0;
        }

        if (posner_cmd->parsed()) {
            if (generator_texts.empty() && quotient_text.empty())
                throw std::invalid_argument("posner: give --gen and/or --quotient");
            if (!generator_texts.empty()) {
                std::vector<QMat> generators;
                for (const auto& t : generator_texts)
                    generators.push_back(parse_matrix(t));
                int n = posner_n > 0 ? posner_n : generators.front().rows();
                IntegerMatrixIdeal ideal = ideal_generated(n, generators);
                if (machine(flags))
                    out << "ideal_k=" << ideal.k.get_str() << "\n";
                else
                    out << "ideal: all " << n << "x" << n
                        << " integer matrices with entries divisible by "
                        << ideal.k.get_str() << "\n";
                if (ideal.k != 0) {
                    QMat witness = ideal_center_witness(ideal);
                    if (machine(flags))
                        out << "central_witness=" << witness.to_string() << "\n";
                    else
                        out << "central witness: " << witness.to_string() << "\n";
                } else if (!machine(flags)) {
                    out << "zero ideal: it meets the center only in 0\n";
                }
            }
            if (!quotient_text.empty()) {
                QMat q = parse_matrix(quotient_text);
                CentralQuotient cq = central_quotient_form(q);
                if (machine(flags)) {
                    out << "z=" << cq.z.get_str() << "\n";
                    out << "r=" << cq.r.to_string() << "\n";
                } else {
                    out << "q = z^-1 r with z = " << cq.z.get_str()
                        << ", r = " << cq.r.to_string() << "\n";
                }
            }
            return 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("piq");
    for (const auto& s : args) argv.push_back(s.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace piq::cli
