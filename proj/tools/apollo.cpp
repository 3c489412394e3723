// apollo: classify primitive integral Apollonian circle packings, enumerate
// curvatures up to a bound, and produce missing / sporadic / verification
// reports. Exit codes: 0 success, 1 usage or parse error, 2 invariant
// violation in the input, 3 verification failure, 4 I/O or file format error.

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apollo/enumerate.hpp"
#include "apollo/report.hpp"

namespace {

using namespace apollo;

constexpr int64_t kDefaultCeiling = 1000000000;  // 1e9: 125 MB of bitmap

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string quad;
    std::string bound;
    std::string out;
    std::string format;  // resolved per command when empty
    std::string bitmap;
    std::string report;  // diffplot input
    int threads = 1;
};

int64_t parse_integer(std::string tok, const std::string& what) {
    size_t b = tok.find_first_not_of(" \t");
    size_t e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError(what + ": empty value");
    tok = tok.substr(b, e - b + 1);
    if (!tok.empty() && tok[0] == '+') tok = tok.substr(1);
    int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec == std::errc::result_out_of_range)
        throw domain_error(what + ": value " + tok + " does not fit a signed 64-bit integer");
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw UsageError(what + ": cannot parse integer from \"" + tok + "\"");
    return v;
}

Quadruple parse_quad(const std::string& s) {
    std::vector<int64_t> vals;
    size_t pos = 0;
    while (true) {
        size_t comma = s.find(',', pos);
        std::string tok = comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
        vals.push_back(parse_integer(tok, "--quad"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (vals.size() != 4)
        throw UsageError("--quad wants four comma-separated integers, got \"" + s + "\"");
    return Quadruple{vals[0], vals[1], vals[2], vals[3]};
}

// Plain integers or scientific notation like 1e6 / 2.5e7, evaluated exactly.
int64_t parse_bound(const std::string& s, const std::string& what) {
    static const std::regex sci(R"(^\s*([0-9]+)(?:\.([0-9]*))?[eE]\+?([0-9]{1,3})\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, sci)) return parse_integer(s, what);
    std::string digits = m[1].str() + m[2].str();
    int64_t frac = (int64_t)m[2].length();
    int64_t exp = parse_integer(m[3].str(), what);
    if (exp < frac)
        throw UsageError(what + ": \"" + s + "\" is not an integer");
    try {
        int64_t v = parse_integer(digits, what);
        for (int64_t i = 0; i < exp - frac; ++i) v = checked::mul(v, 10);
        return v;
    } catch (const overflow_error&) {
        throw domain_error(what + ": value " + s + " does not fit a signed 64-bit integer");
    }
}

int64_t bound_ceiling() {
    const char* env = std::getenv("APOLLO_MAX_BOUND");
    if (!env || !*env) return kDefaultCeiling;
    int64_t v = parse_bound(env, "APOLLO_MAX_BOUND");
    if (v < 1) throw domain_error("APOLLO_MAX_BOUND must be positive");
    return std::min(v, kMaxBound);
}

int64_t checked_bound(const std::string& s) {
    int64_t b = parse_bound(s, "--bound");
    int64_t ceiling = bound_ceiling();
    if (b < 1) throw domain_error("--bound must be at least 1");
    if (b > ceiling)
        throw domain_error("--bound " + std::to_string(b) + " exceeds the ceiling " +
                           std::to_string(ceiling) +
                           " (raise it with APOLLO_MAX_BOUND; hard cap 2^40)");
    return b;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open for writing: " + out);
    os << text;
    if (!os) throw io_error("write failed: " + out);
}

std::string resolved_format(const Opts& o, const char* fallback) {
    return o.format.empty() ? fallback : o.format;
}

// Bitmap for missing/sporadic/verify: load from --bitmap (cross-checking any
// --quad/--bound against the file header) or enumerate fresh.
CurvatureBitmap obtain_bitmap(const Opts& o) {
    if (!o.bitmap.empty()) {
        CurvatureBitmap bm = read_apbm(o.bitmap);
        if (!o.quad.empty()) {
            Quadruple want = reduce_to_root(validate(parse_quad(o.quad)));
            if (!(want == reduce_to_root(bm.root)))
                throw domain_error("bitmap root " + to_string(bm.root) +
                                   " does not match --quad root " + to_string(want));
        }
        if (!o.bound.empty()) {
            int64_t b = parse_bound(o.bound, "--bound");
            if (b != bm.bound)
                throw domain_error("bitmap bound " + std::to_string(bm.bound) +
                                   " does not match --bound " + std::to_string(b));
        }
        return bm;
    }
    if (o.quad.empty() || o.bound.empty())
        throw UsageError("need either --bitmap PATH or both --quad and --bound");
    EnumerateOptions eo;
    eo.threads = o.threads;
    return std::move(enumerate_curvatures(parse_quad(o.quad), checked_bound(o.bound), eo).bitmap);
}

int cmd_classify(const Opts& o) {
    json rep = classify_report(parse_quad(o.quad));
    emit(resolved_format(o, "json") == "csv" ? classify_report_csv(rep) : canonical(rep), o.out);
    return 0;
}

int cmd_enumerate(const Opts& o) {
    if (o.out.empty()) throw UsageError("enumerate requires --out PATH for the bitmap file");
    Quadruple q = parse_quad(o.quad);
    int64_t bound = checked_bound(o.bound);
    EnumerateOptions eo;
    eo.threads = o.threads;
    auto t0 = std::chrono::steady_clock::now();
    EnumerationResult res = enumerate_curvatures(q, bound, eo);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    write_apbm(res.bitmap, o.out);
    std::cout << "root=" << to_string(res.bitmap.root) << " bound=" << bound
              << " set_bits=" << res.bitmap.count() << " nodes=" << res.nodes
              << " wall_ms=" << ms << "\n";
    return 0;
}

int cmd_missing(const Opts& o) {
    CurvatureBitmap bm = obtain_bitmap(o);
    PackingType t = extended_type(bm.root);
    MissingReport rep = missing_curvatures(bm, {t.size, t.k});
    json j = missing_report_json(rep, t);
    emit(resolved_format(o, "json") == "csv" ? missing_report_csv(j) : canonical(j), o.out);
    return 0;
}

int cmd_sporadic(const Opts& o) {
    CurvatureBitmap bm = obtain_bitmap(o);
    PackingType t = extended_type(bm.root);
    std::vector<ObstructionFamily> fams = obstructions_for(t).families;
    MissingReport mis = missing_curvatures(bm, {t.size, t.k});
    SporadicReport sp = sporadic_set(mis, fams);
    json jm = missing_report_json(mis, t);
    json j = sporadic_report_json(sp, t, fams);
    j["missing"] = jm["missing"];
    j["missing_count"] = jm["missing_count"];
    emit(resolved_format(o, "json") == "csv" ? sporadic_report_csv(j) : canonical(j), o.out);
    return 0;
}

int cmd_verify(const Opts& o) {
    CurvatureBitmap bm = obtain_bitmap(o);
    PackingType t = extended_type(bm.root);
    ObstructionReport obs = obstructions_for(t);
    ResidueClassSet adm = admissible_residues({t.size, t.k});

    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;

    {  // every member of every predicted family must be absent
        bool pass = true;
        std::string detail = obs.families.empty() ? "no predicted families" : "";
        for (const auto& f : obs.families) {
            for (int64_t w = 1; pass; ++w) {
                int64_t v = f.multiplier;
                for (int i = 0; i < f.degree; ++i) v = checked::mul(v, w);
                if (v > bm.bound) break;
                if (bm.test(v)) {
                    pass = false;
                    detail = "family " + std::to_string(f.multiplier) + "*w^" +
                             std::to_string(f.degree) + " member " + std::to_string(v) +
                             " (w=" + std::to_string(w) + ") is present";
                }
            }
            if (!pass) break;
        }
        checks.push_back({"obstruction_absence", pass, detail});
    }

    {  // every set bit must lie in an admissible class mod 24
        bool pass = true;
        std::string detail;
        for (size_t wi = 0; wi < bm.words.size() && pass; ++wi) {
            uint64_t w = bm.words[wi];
            while (w) {
                int b = std::countr_zero(w);
                w &= w - 1;
                int64_t m = (int64_t)(wi * 64 + (size_t)b) + 1;
                if (!adm.contains((int)(m % 24))) {
                    pass = false;
                    detail = "curvature " + std::to_string(m) + " lies in inadmissible class " +
                             std::to_string(m % 24) + " mod 24";
                    break;
                }
            }
        }
        checks.push_back({"admissible_classes", pass, detail});
    }

    {  // tangent pairs in sampled orbit quadruples: a+b mod 8 never 3, 6, 7
        EnumerateOptions eo;
        eo.witness_target = 64;
        EnumerationResult wres =
            enumerate_curvatures(bm.root, std::min<int64_t>(bm.bound, 10000), eo);
        std::vector<Quadruple> sample = wres.witnesses;
        sample.push_back(bm.root);
        bool pass = true;
        std::string detail;
        for (const auto& q : sample) {
            for (int i = 0; i < 4 && pass; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    int64_t s = checked::add(q[i], q[j]);
                    int64_t r = mod_floor(s, 8);
                    if (r == 3 || r == 6 || r == 7) {
                        pass = false;
                        detail = "tangent curvatures " + std::to_string(q[i]) + " and " +
                                 std::to_string(q[j]) + " sum to " + std::to_string(s) +
                                 ", which is " + std::to_string(r) + " mod 8";
                        break;
                    }
                }
            if (!pass) break;
        }
        if (pass) detail = "checked " + std::to_string(sample.size()) + " quadruples";
        checks.push_back({"tangent_sums_mod_8", pass, detail});
    }

    {  // 24 m^2 and 8 n^2 (3 not dividing n) never co-occur
        CooccurrenceReport cr = cooccurrence_check(bm);
        std::string detail;
        if (!cr.pass)
            detail = "both " + std::to_string(cr.squares24.front()) + " (24 m^2) and " +
                     std::to_string(cr.squares8.front()) + " (8 n^2) are present";
        else
            detail = std::to_string(cr.squares24.size()) + " values 24 m^2 present, " +
                     std::to_string(cr.squares8.size()) + " values 8 n^2 present";
        checks.push_back({"cooccurrence", cr.pass, detail});
    }

    bool all = true;
    json jchecks = json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        jchecks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    std::cout << (all ? "PASS" : "FAIL") << "\n";

    if (!o.out.empty()) {
        json j;
        j["tool"] = kToolName;
        j["tool_version"] = kVersion;
        j["root"] = json::array({bm.root[0], bm.root[1], bm.root[2], bm.root[3]});
        j["bound"] = bm.bound;
        j["type"] = json{{"size", t.size}, {"k", t.k}, {"chi2", t.chi2}};
        j["type"]["chi4"] =
            t.chi4 == Chi4Class::not_applicable ? json(nullptr) : json(to_string(t.chi4));
        j["type_string"] = to_string(t);
        j["checks"] = jchecks;
        j["pass"] = all;
        emit(canonical(j), o.out);
    }
    return all ? 0 : 3;
}

int cmd_diffplot(const Opts& o) {
    std::ifstream is(o.report);
    if (!is) throw io_error("cannot open for reading: " + o.report);
    json src;
    try {
        src = json::parse(is);
    } catch (const json::exception& e) {
        throw format_error("malformed report file " + o.report + ": " + e.what());
    }
    json dj;
    try {
        dj = diff_report_json(src);
    } catch (const json::exception& e) {
        throw format_error("report file " + o.report + " lacks expected fields: " + e.what());
    }
    emit(resolved_format(o, "csv") == "json" ? canonical(dj) : diff_report_csv(dj), o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Apollonian circle packing curvature toolkit"};
    app.require_subcommand(1);
    Opts o;

    auto add_quad = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--quad", o.quad, "Descartes quadruple a,b,c,d");
        if (required) opt->required();
    };
    auto add_bound = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--bound", o.bound,
                                  "curvature bound N (plain or scientific, e.g. 1e6)");
        if (required) opt->required();
    };
    auto add_out = [&](CLI::App* c, const char* help, bool required = false) {
        auto* opt = c->add_option("--out", o.out, help);
        if (required) opt->required();
    };
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_threads = [&](CLI::App* c) {
        c->add_option("--threads", o.threads, "worker threads for enumeration")
            ->check(CLI::PositiveNumber);
    };
    auto add_bitmap = [&](CLI::App* c) {
        c->add_option("--bitmap", o.bitmap, "read curvatures from this bitmap file");
    };

    auto* c_classify =
        app.add_subcommand("classify", "type, invariants, and predicted obstruction families");
    add_quad(c_classify, true);
    add_out(c_classify, "report path (default stdout)");
    add_format(c_classify);

    auto* c_enumerate =
        app.add_subcommand("enumerate", "write the curvature bitmap up to a bound");
    add_quad(c_enumerate, true);
    add_bound(c_enumerate, true);
    add_out(c_enumerate, "bitmap file path", true);
    add_threads(c_enumerate);

    auto* c_missing = app.add_subcommand("missing", "missing curvatures per admissible class");
    add_quad(c_missing, false);
    add_bound(c_missing, false);
    add_bitmap(c_missing);
    add_out(c_missing, "report path (default stdout)");
    add_format(c_missing);
    add_threads(c_missing);

    auto* c_sporadic =
        app.add_subcommand("sporadic", "missing curvatures not explained by any predicted family");
    add_quad(c_sporadic, false);
    add_bound(c_sporadic, false);
    add_bitmap(c_sporadic);
    add_out(c_sporadic, "report path (default stdout)");
    add_format(c_sporadic);
    add_threads(c_sporadic);

    auto* c_verify = app.add_subcommand(
        "verify", "check obstruction absence, admissibility, tangency sums, co-occurrence");
    add_quad(c_verify, false);
    add_bound(c_verify, false);
    add_bitmap(c_verify);
    add_out(c_verify, "JSON summary path (optional)");
    add_threads(c_verify);

    auto* c_diffplot =
        app.add_subcommand("diffplot", "successive differences of a missing/sporadic report");
    c_diffplot->add_option("report", o.report, "missing or sporadic JSON report file")
        ->required();
    add_out(c_diffplot, "output path (default stdout)");
    add_format(c_diffplot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(o);
        if (c_enumerate->parsed()) return cmd_enumerate(o);
        if (c_missing->parsed()) return cmd_missing(o);
        if (c_sporadic->parsed()) return cmd_sporadic(o);
        if (c_verify->parsed()) return cmd_verify(o);
        if (c_diffplot->parsed()) return cmd_diffplot(o);
        std::cerr << "error: no command\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const format_error& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 4;
    } catch (const apollo::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
