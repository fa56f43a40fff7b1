#pragma once

// The iotak command line.  run() never touches std::cout/std::cerr directly,
// so it can be driven from tests.
//
// Exit codes: 0 success, 1 verification failure (or a negative answer from
// local-equiv), 2 parse or usage error, 3 search cap exceeded or oracle
// disagreement.

#include "iotak/invariants.hpp"
#include "iotak/io.hpp"
#include "iotak/local_equivalence.hpp"
#include "iotak/models.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace iotak::cli {

enum Exit : int { ok = 0, verification_failed = 1, usage = 2, cap_exceeded = 3 };

namespace detail {

struct TorusSpec {
    std::vector<int> pq;
    bool mirror = false;
};

inline IotaComplex torus_from(const TorusSpec &t) {
    auto ic = torus_knot(t.pq.at(0), t.pq.at(1));
    return t.mirror ? mirror(ic) : ic;
}

inline void emit(const IotaComplex &ic, const std::string &path, std::ostream &out) {
    if (path.empty())
        out << dump_complex(to_json(ic));
    else
        write_iota_complex(ic, path);
}

/// Throws VerificationFailed with the failing condition.
class VerificationFailed : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline void require_valid(const IotaComplex &ic) {
    const auto rep = verify_iota_complex(ic);
    if (!rep.ok())
        throw VerificationFailed(ic.name + " is not an iota_K-complex: condition (" +
                                 std::to_string(rep.first_failure()) + ") fails");
}

inline void print_entries(std::ostream &out, const Morphism &m, const FreeComplex &s, const FreeComplex &t) {
    m.matrix.for_each([&](std::size_t y, std::size_t x, const LaurentPoly &p) {
        out << "  " << s[x].name << " -> " << p << " " << t[y].name << "\n";
    });
}

} // namespace detail

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Involutive knot Floer invariants of iota_K-complexes", "iotak"};
    app.require_subcommand(1);

    std::string file;
    std::string file_b;
    std::string output;
    std::vector<std::string> files;
    int variant = 1;
    std::string format = "text";
    bool oracle = false;
    std::size_t cap = 24;
    detail::TorusSpec torus;
    detail::TorusSpec inv_torus;

    auto *check = app.add_subcommand("check", "Verify the iota_K-complex axioms");
    check->add_option("file", file, "Complex file")->required();

    auto *tor = app.add_subcommand("torus", "Emit the staircase model of T(p,q)");
    tor->add_option("pq", torus.pq, "Coprime positive integers p q")->expected(2)->required();
    tor->add_flag("--mirror", torus.mirror, "Emit the mirror");
    tor->add_option("-o,--output", output, "Output file (default stdout)");

    auto *sum = app.add_subcommand("sum", "Iterated product of complexes");
    sum->add_option("files", files, "Complex files")->required()->expected(1, -1);
    sum->add_option("--variant", variant, "Product variant")->check(CLI::IsMember({1, 2}));
    sum->add_option("-o,--output", output, "Output file (default stdout)");

    auto *dual = app.add_subcommand("dual", "Dual complex");
    dual->add_option("file", file, "Complex file")->required();
    dual->add_option("-o,--output", output, "Output file (default stdout)");

    auto *inv = app.add_subcommand("invariants", "Compute d, d_bar, d_under and V0, V0_bar, V0_under");
    auto *inv_file = inv->add_option("file", file, "Complex file");
    auto *inv_tor = inv->add_option("--torus", inv_torus.pq, "Use the model of T(p,q)")->expected(2);
    inv->add_flag("--mirror", inv_torus.mirror, "With --torus: use the mirror");
    inv->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    inv->add_flag("--oracle", oracle, "Cross-check d_bar and d_under by a direct slice computation");
    inv_file->excludes(inv_tor);

    auto *obs = app.add_subcommand("obstruct", "Test the thin / L-space patterns");
    auto *obs_file = obs->add_option("file", file, "Complex file");
    auto *obs_tor = obs->add_option("--torus", inv_torus.pq, "Use the model of T(p,q)")->expected(2);
    obs->add_flag("--mirror", inv_torus.mirror, "With --torus: use the mirror");
    obs_file->excludes(obs_tor);

    auto *leq = app.add_subcommand("local-equiv", "Search for a local equivalence");
    leq->add_option("a", file, "First complex file")->required();
    leq->add_option("b", file_b, "Second complex file")->required();
    leq->add_option("--cap", cap, "Largest chain-map space dimension to enumerate")->check(CLI::Range(0, 48));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "iotak: " << e.what() << "\n";
        return usage;
    }

    auto load_target = [&](CLI::Option *file_opt) {
        if (file_opt->count() > 0)
            return read_iota_complex(file);
        if (inv_torus.pq.size() != 2)
            throw CLI::ValidationError("a complex file or --torus p q is required");
        return detail::torus_from(inv_torus);
    };

    try {
        if (check->parsed()) {
            const auto ic = read_iota_complex(file);
            const auto rep = verify_iota_complex(ic);
            static const char *names[] = {"free chain complex", "filtered differential", "bigraded differential",
                                          "homology is R",      "iota skew chain map",   "iota^2 ~ id + Phi Psi"};
            out << ic.name << " (" << ic.size() << " generators)\n";
            for (std::size_t i = 0; i < rep.conditions.size(); ++i) {
                const bool skipped = i == 5 && !rep.homotopy_checked;
                out << "  (" << i + 1 << ") " << names[i] << ": "
                    << (skipped ? "skipped" : rep.conditions[i] ? "pass" : "FAIL") << "\n";
            }
            for (const auto &s : rep.issues)
                out << "  " << s << "\n";
            return rep.ok() ? ok : verification_failed;
        }
        if (tor->parsed()) {
            detail::emit(detail::torus_from(torus), output, out);
            return ok;
        }
        if (sum->parsed()) {
            std::vector<IotaComplex> parts;
            for (const auto &f : files) {
                parts.push_back(read_iota_complex(f));
                detail::require_valid(parts.back());
            }
            IotaComplex acc = parts.front();
            for (std::size_t i = 1; i < parts.size(); ++i)
                acc = product(acc, parts[i], variant == 1 ? ProductVariant::first : ProductVariant::second,
                              {false}); // inputs verified above
            detail::emit(acc, output, out);
            return ok;
        }
        if (dual->parsed()) {
            const auto ic = read_iota_complex(file);
            detail::require_valid(ic);
            detail::emit(dual_iota(ic), output, out);
            return ok;
        }
        if (inv->parsed() || obs->parsed()) {
            const auto ic = load_target(inv->parsed() ? inv_file : obs_file);
            detail::require_valid(ic);
            const auto tower = a_zero_minus(ic);
            const auto rep = involutive_invariants(tower);
            if (obs->parsed()) {
                const auto v = obstruction_pattern(rep);
                out << ic.name << "\n"
                    << "  (V0_bar, V0, V0_under) = (" << rep.V0_bar << ", " << rep.V0 << ", " << rep.V0_under << ")\n"
                    << "  pattern 1 (all >= 0, 0 <= V0_under - V0_bar <= 1): " << (v.pattern1 ? "yes" : "no") << "\n"
                    << "  pattern 2 (V0_bar <= 0 = V0 = V0_under): " << (v.pattern2 ? "yes" : "no") << "\n"
                    << "  verdict: "
                    << (v.consistent_with_thin_or_lspace() ? "consistent with thin or L-space knots"
                                                           : "not concordant to a thin or L-space knot")
                    << "\n";
                return ok;
            }
            std::optional<OracleResult> check_result;
            if (oracle) {
                try {
                    check_result = lemma_criteria_oracle(tower);
                } catch (const OracleCapTooSmall &e) {
                    err << "iotak: " << e.what() << "\n";
                    return cap_exceeded;
                }
                if (check_result->d_bar != rep.d_bar || check_result->d_under != rep.d_under) {
                    err << "iotak: oracle disagrees: (d_bar, d_under) = (" << check_result->d_bar << ", "
                        << check_result->d_under << ") vs (" << rep.d_bar << ", " << rep.d_under << ")\n";
                    return cap_exceeded;
                }
            }
            if (format == "json") {
                out << dump(to_json(rep));
            } else {
                out << ic.name << "\n"
                    << "  (V0_bar, V0, V0_under) = (" << rep.V0_bar << ", " << rep.V0 << ", " << rep.V0_under << ")\n"
                    << "  (d_bar, d, d_under) = (" << rep.d_bar << ", " << rep.d << ", " << rep.d_under << ")\n";
                if (check_result)
                    out << "  oracle: agrees\n";
            }
            return ok;
        }
        if (leq->parsed()) {
            const auto a = read_iota_complex(file);
            const auto b = read_iota_complex(file_b);
            detail::require_valid(a);
            detail::require_valid(b);
            const auto res = search_local_equivalence(a, b, cap);
            if (!res.witness) {
                out << "not locally equivalent (exhaustive search, chain-map dimensions " << res.forward_dimension
                    << " and " << res.backward_dimension << ")\n";
                return verification_failed;
            }
            out << "locally equivalent\nF: " << a.name << " -> " << b.name << "\n";
            detail::print_entries(out, res.witness->first, a.complex, b.complex);
            out << "G: " << b.name << " -> " << a.name << "\n";
            detail::print_entries(out, res.witness->second, b.complex, a.complex);
            return ok;
        }
    } catch (const ParseError &e) {
        err << "iotak: " << e.what() << "\n";
        return usage;
    } catch (const CLI::ValidationError &e) {
        err << "iotak: " << e.what() << "\n";
        return usage;
    } catch (const CapExceeded &e) {
        err << "iotak: " << e.what() << "\n";
        return cap_exceeded;
    } catch (const detail::VerificationFailed &e) {
        err << "iotak: " << e.what() << "\n";
        return verification_failed;
    } catch (const InvariantError &e) {
        err << "iotak: " << e.what() << "\n";
        return verification_failed;
    } catch (const std::invalid_argument &e) {
        err << "iotak: " << e.what() << "\n";
        return usage;
    } catch (const std::exception &e) {
        err << "iotak: " << e.what() << "\n";
        return verification_failed;
    }
    return usage;
}

} // namespace iotak::cli
