// Batch front end: runs the verification suites, emits character
// tables, transition matrices, and fiber reports.  Exit codes: 0 all
// checks pass, 1 falsification, 2 usage, 3 resource limit.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "charfn/axb.hpp"
#include "charfn/classfn.hpp"
#include "charfn/dualgrp.hpp"
#include "charfn/error.hpp"
#include "charfn/fingroup.hpp"
#include "charfn/gf.hpp"
#include "charfn/kirillov.hpp"
#include "charfn/psgl2.hpp"
#include "charfn/report.hpp"
#include "charfn/u4.hpp"

namespace {

using namespace charfn;
namespace fs = std::filesystem;

// A batch request; `suite` is one of u4, heisenberg, axb, gl2a2, dual, all.
struct JobSpec {
    std::string suite;
    long q = 0;
    int p = 2, a = 1, bound = 12;
    std::vector<int> levels;
    bool small = false;
};

const FqDesc* field_from_q(long q) {
    require(q >= 2, ErrorKind::Usage, "q must be a prime power >= 2");
    long p = 0, rest = q;
    for (long c = 2; c * c <= q; ++c)
        if (q % c == 0) {
            p = c;
            break;
        }
    if (p == 0) p = q;
    int a = 0;
    while (rest % p == 0) {
        rest /= p;
        ++a;
    }
    require(rest == 1, ErrorKind::Usage,
            "q = " + std::to_string(q) + " is not a prime power");
    return gf(static_cast<int>(p), a);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string cyc_str(const Cyc& v) {
    return v.is_rational() ? rat_to_string(v.rational_value()) : v.to_string();
}

// rows = characters, columns = class representatives, exact values
std::string table_csv(const GroupPtr& g, const std::vector<ClassFn>& chars) {
    const ConjClasses& cc = g->classes();
    std::ostringstream os;
    os << "character";
    for (std::uint64_t r : cc.representatives) os << "," << csv_field(g->to_string(r));
    os << "\n";
    for (std::size_t i = 0; i < chars.size(); ++i) {
        require(chars[i].group == g, ErrorKind::InvalidArgument,
                "character table rows must live on the printed group");
        os << csv_field(chars[i].label.empty() ? "chi" + std::to_string(i) : chars[i].label);
        for (std::size_t c = 0; c < cc.count(); ++c)
            os << "," << csv_field(cyc_str(chars[i].at_class(c)));
        os << "\n";
    }
    return os.str();
}

// One output file before it lands anywhere; `name` doubles as the
// default file name in directory mode and as the extension role when
// --out lists explicit paths.
struct Artifact {
    std::string name;
    std::string content;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    require(bool(os), ErrorKind::Io, "cannot open " + path.string() + " for writing");
    os << content;
    os.flush();
    require(bool(os), ErrorKind::Io, "write failed for " + path.string());
}

// --out DIR writes every artifact under its default name; --out with
// explicit file names assigns them in order within each extension
void emit_artifacts(const std::vector<std::string>& out, const std::vector<Artifact>& arts) {
    if (out.empty()) return;
    if (out.size() == 1 &&
        (fs::is_directory(out[0]) || out[0].back() == '/' || fs::path(out[0]).extension().empty())) {
        fs::create_directories(out[0]);
        for (const Artifact& a : arts) write_file(fs::path(out[0]) / a.name, a.content);
        return;
    }
    std::vector<bool> used(arts.size(), false);
    for (const std::string& path : out) {
        const std::string ext = fs::path(path).extension().string();
        bool placed = false;
        for (std::size_t i = 0; i < arts.size(); ++i) {
            if (used[i] || fs::path(arts[i].name).extension().string() != ext) continue;
            if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
            write_file(path, arts[i].content);
            used[i] = true;
            placed = true;
            break;
        }
        require(placed, ErrorKind::Usage,
                "no artifact with extension '" + ext + "' left for --out " + path);
    }
}

VerificationReport run_job(const JobSpec& job);

VerificationReport merge_reports(const std::string& suite,
                                 const std::vector<std::pair<std::string, VerificationReport>>& parts) {
    VerificationReport rep;
    rep.suite = suite;
    nlohmann::json jobs = nlohmann::json::array();
    for (const auto& [tag, part] : parts) {
        jobs.push_back({{"tag", tag}, {"suite", part.suite}, {"params", part.params}});
        for (const Check& c : part.checks)
            rep.checks.push_back({tag + ": " + c.name, c.pass, c.witness, c.elapsed_ms});
    }
    rep.params["jobs"] = jobs;
    return rep;
}

VerificationReport run_job(const JobSpec& job) {
    if (job.suite == "u4") return u4_verify(make_u4(field_from_q(job.q)));
    if (job.suite == "heisenberg")
        return verify_kirillov_bijection(nil_lie(make_heisenberg(field_from_q(job.q))));
    if (job.suite == "axb") return axb_verify(field_from_q(job.q));
    if (job.suite == "gl2a2")
        return gl2a2_verify(field_from_q(job.q), job.levels.empty() ? std::vector<int>{1} : job.levels);
    if (job.suite == "dual") return dual_verify(job.p, job.a, job.bound);
    if (job.suite == "all") {
        std::vector<std::pair<std::string, VerificationReport>> parts;
        auto make = [](const std::string& suite, long q) {
            JobSpec j;
            j.suite = suite;
            j.q = q;
            return j;
        };
        auto add = [&](const std::string& tag, const JobSpec& j) {
            parts.emplace_back(tag, run_job(j));
        };
        std::vector<long> u4_qs = job.small ? std::vector<long>{2} : std::vector<long>{2, 4};
        std::vector<long> heis_qs = job.small ? std::vector<long>{3} : std::vector<long>{3, 5};
        std::vector<long> axb_qs = job.small ? std::vector<long>{3} : std::vector<long>{3, 5, 7};
        for (long q : u4_qs) add("u4 q=" + std::to_string(q), make("u4", q));
        for (long q : heis_qs) add("heisenberg q=" + std::to_string(q), make("heisenberg", q));
        for (long q : axb_qs) add("axb q=" + std::to_string(q), make("axb", q));
        JobSpec g2 = make("gl2a2", 2);
        g2.levels = {1, 2};
        add("gl2a2 q=2", g2);
        if (!job.small) {
            JobSpec g3 = make("gl2a2", 3);
            g3.levels = {1};
            add("gl2a2 q=3", g3);
        }
        for (int p : {2, 3}) {
            JobSpec d = make("dual", 0);
            d.p = p;
            d.bound = job.small ? 4 : 12;
            add("dual p=" + std::to_string(p), d);
        }
        return merge_reports("all", parts);
    }
    fail(ErrorKind::Usage, "unknown suite " + job.suite);
}

// 0 all pass, 1 falsification; prints the report and writes artifacts
int finish(const VerificationReport& rep, const std::vector<std::string>& out,
           const std::string& format, std::vector<Artifact> extra = {}) {
    std::vector<Artifact> arts = std::move(extra);
    arts.push_back({"report.json", rep.to_json().dump(2) + "\n"});
    arts.push_back({"report.txt", rep.to_text()});
    emit_artifacts(out, arts);
    if (format == "json") std::cout << rep.to_json().dump(2) << "\n";
    else std::cout << rep.to_text();
    return rep.all_pass() ? 0 : 1;
}

long center_order(const GroupPtr& g) {
    std::vector<std::uint64_t> gens = g->generators();
    return subgroup_where(g, [&](std::uint64_t x) {
               return std::all_of(gens.begin(), gens.end(), [&](std::uint64_t h) {
                   return g->mul(x, h) == g->mul(h, x);
               });
           })
        ->order();
}

int cmd_group_info(const std::string& kind, long q, int m, const std::vector<std::string>& out,
                   const std::string& format) {
    const FqDesc* f = field_from_q(q);
    GroupPtr g;
    nlohmann::json params = {{"q", q}};
    if (kind == "u4") g = make_u4(f);
    else if (kind == "heisenberg") g = make_heisenberg(f);
    else if (kind == "axb") g = make_axb(f);
    else if (kind == "gl2a2") {
        g = make_gl2ar(f, m);
        params["m"] = m;
    } else fail(ErrorKind::Usage, "unknown group kind " + kind);

    const ConjClasses& cc = g->classes();
    nlohmann::json info = {{"kind", kind},
                           {"params", params},
                           {"order", g->order()},
                           {"num_classes", cc.count()},
                           {"class_sizes", cc.sizes}};
    emit_artifacts(out, {{"info.json", info.dump(2) + "\n"}});
    if (format == "json") {
        std::cout << info.dump(2) << "\n";
    } else {
        std::cout << "kind:        " << kind << "\n"
                  << "order:       " << g->order() << "\n"
                  << "classes:     " << cc.count() << "\n"
                  << "center size: " << center_order(g) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact character computations for small matrix groups over finite fields"};
    app.require_subcommand(1);

    std::vector<std::string> out;
    std::string format = "text";
    app.add_option("--out", out, "output directory or explicit artifact file names")
        ->expected(-1);
    app.add_option("--format", format, "stdout rendering: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // group info
    CLI::App* grp = app.add_subcommand("group", "group facts");
    grp->fallthrough();
    std::string kind;
    long grp_q = 0;
    int grp_m = 1;
    CLI::App* info = grp->add_subcommand("info", "order, class count, center");
    info->fallthrough();
    info->add_option("--kind", kind, "u4, heisenberg, axb, or gl2a2")->required();
    info->add_option("--q", grp_q, "ground field size")->required();
    info->add_option("--m", grp_m, "extension level for gl2a2");
    grp->require_subcommand(1);

    // u4
    CLI::App* u4 = app.add_subcommand("u4", "the [a,b,c,d] group in characteristic 2");
    u4->fallthrough();
    long u4_q = 0;
    u4->add_option("--q", u4_q, "field size, a power of 2")->required();
    CLI::App* u4_ver = u4->add_subcommand("verify", "run the full suite");
    u4_ver->fallthrough();
    CLI::App* u4_tr = u4->add_subcommand("transition", "basis change to the irreducible characters");
    u4_tr->fallthrough();
    u4->require_subcommand(1);

    // heisenberg
    CLI::App* heis = app.add_subcommand("heisenberg", "the [a,b,c] group in odd characteristic");
    heis->fallthrough();
    long heis_q = 0;
    heis->add_option("--q", heis_q, "field size, a power of an odd prime")->required();
    CLI::App* heis_ver = heis->add_subcommand("verify", "orbit-character bijection checks");
    heis_ver->fallthrough();
    heis->require_subcommand(1);

    // axb
    CLI::App* axb = app.add_subcommand("axb", "the affine group of the line");
    axb->fallthrough();
    long axb_q = 0;
    axb->add_option("--q", axb_q, "field size")->required();
    CLI::App* axb_ver = axb->add_subcommand("verify", "character table and difference identity");
    axb_ver->fallthrough();
    axb->require_subcommand(1);

    // gl2a2
    CLI::App* gl2 = app.add_subcommand("gl2a2", "GL2 over the two-step extension ring");
    gl2->fallthrough();
    long gl2_q = 0;
    std::vector<int> gl2_levels;
    int gl2_fiber_level = 1;
    gl2->add_option("--q", gl2_q, "ground field size")->required();
    gl2->add_option("--levels", gl2_levels, "extension levels, e.g. 1,2")->delimiter(',');
    CLI::App* gl2_ver = gl2->add_subcommand("verify", "induced-character and fiber suite");
    gl2_ver->fallthrough();
    CLI::App* gl2_fib = gl2->add_subcommand("fibers", "per-class fiber tags and counts");
    gl2_fib->fallthrough();
    gl2_fib->add_option("--level", gl2_fiber_level, "extension level of the group");
    gl2->require_subcommand(1);

    // dual
    CLI::App* dual = app.add_subcommand("dual", "bounded duals of the abelian towers");
    dual->fallthrough();
    int dual_p = 2, dual_a = 1, dual_bound = 12;
    dual->add_option("--p", dual_p, "characteristic");
    dual->add_option("--a", dual_a, "base field degree");
    dual->add_option("--bound", dual_bound, "level bound");
    CLI::App* dual_ver = dual->add_subcommand("verify", "norm, fixed-point, and tensor checks");
    dual_ver->fallthrough();
    dual->require_subcommand(1);

    // verify all
    CLI::App* ver = app.add_subcommand("verify", "bundled runs");
    ver->fallthrough();
    bool small = false;
    CLI::App* ver_all = ver->add_subcommand("all", "every suite at standard parameters");
    ver_all->fallthrough();
    ver_all->add_flag("--small", small, "smallest parameters only");
    ver->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (grp->parsed()) return cmd_group_info(kind, grp_q, grp_m, out, format);
        if (u4->parsed()) {
            GroupPtr g = make_u4(field_from_q(u4_q));
            if (u4_ver->parsed()) {
                std::vector<ClassFn> chars;
                for (const IrrCharSpec& s : enumerate_irr_chars(g)) chars.push_back(irr_char(g, s));
                return finish(u4_verify(g), out, format, {{"table.csv", table_csv(g, chars)}});
            }
            TransitionResult r = transition(g);
            return finish(r.report, out, format,
                          {{"matrix.csv", matrix_to_csv(r.matrix)},
                           {"blocks.json", blocks_to_json(r.blocks).dump(2) + "\n"}});
        }
        if (heis->parsed()) {
            NilLie lie = nil_lie(make_heisenberg(field_from_q(heis_q)));
            std::vector<CoadOrbit> orbits = coad_orbits(lie);
            std::vector<ClassFn> chars;
            for (const CoadOrbit& o : orbits) chars.push_back(orbit_char(lie, o));
            return finish(verify_kirillov_bijection(lie), out, format,
                          {{"table.csv", table_csv(lie.group, chars)},
                           {"orbits.json", orbits_to_json(lie, orbits).dump(2) + "\n"}});
        }
        if (axb->parsed()) {
            const FqDesc* f = field_from_q(axb_q);
            GroupPtr g = make_axb(f);
            std::vector<ClassFn> chars;
            for (const AxbChar& s : axb_chars(g)) chars.push_back(axb_char(g, s));
            return finish(axb_verify(f), out, format, {{"table.csv", table_csv(g, chars)}});
        }
        if (gl2->parsed()) {
            const FqDesc* f = field_from_q(gl2_q);
            if (gl2_ver->parsed())
                return finish(gl2a2_verify(f, gl2_levels.empty() ? std::vector<int>{1} : gl2_levels),
                              out, format);
            nlohmann::json fibers = fibers_to_json(f, gl2_fiber_level);
            emit_artifacts(out, {{"fibers.json", fibers.dump(2) + "\n"}});
            std::cout << fibers.dump(2) << "\n";
            return 0;
        }
        if (dual->parsed()) return finish(dual_verify(dual_p, dual_a, dual_bound), out, format);
        if (ver->parsed()) {
            JobSpec all;
            all.suite = "all";
            all.small = small;
            return finish(run_job(all), out, format);
        }
        fail(ErrorKind::Usage, "no subcommand given");
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::ResourceLimit:
            case ErrorKind::LevelBoundExceeded: return 3;
            default: return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
