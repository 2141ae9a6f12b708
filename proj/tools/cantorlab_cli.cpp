// Command-line front end for the cantorlab shared library. All numerics run
// behind the C interface; this binary parses flags, shuttles JSON, and writes
// result files (JSON, CSV, plain PPM).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cantorlab.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Stamp embedded in every output file: library version + hash of the
/// resolved run configuration.
struct RunStamp {
    std::string version;
    std::string config_hash;

    static RunStamp make(const json& config) {
        return RunStamp{clab_version(), hex64(fnv1a(config.dump()))};
    }
    json annotate(json j) const {
        j["version"] = version;
        j["config_hash"] = config_hash;
        return j;
    }
    std::string comment_line() const {
        return "# cantorlab " + version + " config=" + config_hash;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

/// Accepts a file path, inline JSON (starting with '{'), or builtin:<name>.
std::string resolve_doc(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        return json{{"builtin", spec.substr(8)}}.dump();
    }
    if (!spec.empty() && spec.front() == '{') return spec;
    return read_file(spec);
}

json parse_complex(const std::string& text) {
    double re = 0, im = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &extra) == 2) {
        return json::array({re, im});
    }
    if (std::sscanf(text.c_str(), "%lf%c", &re, &extra) == 1) {
        return json::array({re, 0.0});
    }
    throw CLI::ValidationError("expected a complex literal 're' or 're,im', got '" + text + "'");
}

std::vector<double> parse_ladder(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("empty epsilon ladder");
    return out;
}

/// Call wrapper: raises a domain exit on any library failure.
struct LibError {
    clab_status status;
    std::string message;
};

std::string take_string(char* s) {
    std::string out = s ? s : "";
    clab_string_free(s);
    return out;
}

void check(clab_status st) {
    if (st != CLAB_OK) throw LibError{st, clab_last_error()};
}

struct SystemHandle {
    clab_system* ptr = nullptr;
    ~SystemHandle() { clab_system_free(ptr); }
};

struct ModelHandle {
    clab_model* ptr = nullptr;
    ~ModelHandle() { clab_model_free(ptr); }
};

// ---- plain PPM rendering -------------------------------------------------

struct Rgb {
    int r = 0, g = 0, b = 0;
};

struct Canvas {
    int width = 0, height = 0;
    std::vector<Rgb> px;

    Canvas(int w, int h) : width(w), height(h), px(static_cast<std::size_t>(w) * h) {}
    Rgb& at(int x, int y) { return px[static_cast<std::size_t>(y) * width + x]; }

    std::string to_ppm(const std::string& comment) const {
        std::ostringstream out;
        out << "P3\n" << comment << "\n" << width << " " << height << "\n255\n";
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const Rgb& p = px[static_cast<std::size_t>(y) * width + x];
                out << p.r << " " << p.g << " " << p.b << (x + 1 == width ? "\n" : " ");
            }
        }
        return out.str();
    }
};

struct Frame {
    double x0, y0, x1, y1;  // world rectangle; y grows upward, rows top-down
};

Frame frame_of_disks(const std::vector<json>& disk_lists, double pad) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& disks : disk_lists) {
        for (const auto& d : disks) {
            double cx = d.at("center").at(0).get<double>();
            double cy = d.at("center").at(1).get<double>();
            double r = d.at("radius").get<double>();
            x0 = std::min(x0, cx - r);
            y0 = std::min(y0, cy - r);
            x1 = std::max(x1, cx + r);
            y1 = std::max(y1, cy + r);
        }
    }
    if (x0 > x1) {
        x0 = y0 = -1;
        x1 = y1 = 1;
    }
    double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
    return Frame{x0 - pad * w, y0 - pad * h, x1 + pad * w, y1 + pad * h};
}

void splat_disks(Canvas& canvas, const Frame& f, const json& disks, int channel) {
    const double sx = canvas.width / (f.x1 - f.x0);
    const double sy = canvas.height / (f.y1 - f.y0);
    for (const auto& d : disks) {
        double cx = d.at("center").at(0).get<double>();
        double cy = d.at("center").at(1).get<double>();
        double r = d.at("radius").get<double>();
        int px0 = std::max(0, static_cast<int>((cx - r - f.x0) * sx) - 1);
        int px1 = std::min(canvas.width - 1, static_cast<int>((cx + r - f.x0) * sx) + 1);
        int py0 = std::max(0, static_cast<int>((f.y1 - (cy + r)) * sy) - 1);
        int py1 = std::min(canvas.height - 1, static_cast<int>((f.y1 - (cy - r)) * sy) + 1);
        for (int y = py0; y <= py1; ++y) {
            for (int x = px0; x <= px1; ++x) {
                double wx = f.x0 + (x + 0.5) / sx;
                double wy = f.y1 - (y + 0.5) / sy;
                if ((wx - cx) * (wx - cx) + (wy - cy) * (wy - cy) > r * r) continue;
                Rgb& p = canvas.at(x, y);
                if (channel == 0) p.r = 255;
                if (channel == 1) p.g = 255;
                if (channel == 2) p.b = 255;
            }
        }
    }
}

std::string render_mask_ppm(const json& scan_row, const RunStamp& stamp) {
    int grid = scan_row.at("grid").get<int>();
    const auto& rows = scan_row.at("mask");
    Canvas canvas(grid, grid);
    for (int r = 0; r < grid; ++r) {
        const std::string line = rows.at(r).get<std::string>();
        for (int c = 0; c < grid; ++c) {
            Rgb& p = canvas.at(c, grid - 1 - r);  // row 0 of the mask is the lowest Im
            switch (line[c]) {
                case '1': p = {25, 25, 45}; break;    // certified empty
                case '2': p = {255, 214, 64}; break;  // robust tangency
                case '3': p = {200, 64, 64}; break;   // unresolved
                default: p = {0, 0, 0}; break;        // outside the eps-disk
            }
        }
    }
    return canvas.to_ppm(stamp.comment_line());
}

// ---- subcommand payloads ---------------------------------------------------

int run_validate(const std::string& system_spec, bool as_json) {
    SystemHandle sys;
    check(clab_system_parse(resolve_doc(system_spec).c_str(), &sys.ptr));
    char* rep_c = nullptr;
    check(clab_system_validate(sys.ptr, &rep_c));
    json rep = json::parse(take_string(rep_c));
    if (as_json) {
        std::cout << rep.dump(2) << "\n";
    } else {
        for (const auto& ax : rep.at("axioms")) {
            std::printf("%-20s %s  margin=%s  %s\n", ax.at("name").get<std::string>().c_str(),
                        ax.at("pass").get<bool>() ? "pass" : "FAIL",
                        fmt_double(ax.at("margin").get<double>()).c_str(),
                        ax.at("detail").get<std::string>().c_str());
        }
        std::printf("expansion_inf=%s  mixing_power=%d  all_pass=%s\n",
                    fmt_double(rep.at("expansion_inf").get<double>()).c_str(),
                    rep.at("mixing_power").get<int>(),
                    rep.at("all_pass").get<bool>() ? "true" : "false");
    }
    return rep.at("all_pass").get<bool>() ? kExitOk : kExitDomain;
}

int run_limit_geometry(const std::string& system_spec, const std::string& tail, double tol,
                       int max_depth, int render_px, const std::string& out_dir) {
    json config{{"command", "limit-geometry"}, {"system", system_spec}, {"tail", tail},
                {"tol", tol},                  {"max_depth", max_depth}, {"render", render_px}};
    RunStamp stamp = RunStamp::make(config);

    SystemHandle sys;
    check(clab_system_parse(resolve_doc(system_spec).c_str(), &sys.ptr));
    char* res_c = nullptr;
    check(clab_system_limit_geometry(sys.ptr, tail.c_str(), tol, max_depth, &res_c));
    json res = json::parse(take_string(res_c));

    fs::create_directories(out_dir);
    json image_disks = res.at("image_disks");
    res.erase("image_disks");
    write_file(fs::path(out_dir) / "limit_geometry.json", stamp.annotate(res).dump(2) + "\n");

    std::ostringstream csv;
    csv << stamp.comment_line() << "\n";
    csv << "z_re,z_im,k_re,k_im\n";
    for (const auto& row : res.at("grid")) {
        csv << fmt_double(row.at("z").at(0).get<double>()) << ","
            << fmt_double(row.at("z").at(1).get<double>()) << ","
            << fmt_double(row.at("k").at(0).get<double>()) << ","
            << fmt_double(row.at("k").at(1).get<double>()) << "\n";
    }
    write_file(fs::path(out_dir) / "grid.csv", csv.str());

    Canvas canvas(render_px, render_px);
    Frame frame = frame_of_disks({image_disks}, 0.05);
    splat_disks(canvas, frame, image_disks, 1);
    write_file(fs::path(out_dir) / "render.ppm", canvas.to_ppm(stamp.comment_line()));

    std::printf("depth=%d error_bound=%s -> %s\n", res.at("depth").get<int>(),
                fmt_double(res.at("error_bound").get<double>()).c_str(), out_dir.c_str());
    return kExitOk;
}

json configured_doc(const std::string& system_spec, const std::string& letter,
                    const std::string& config_spec) {
    json doc{{"system", json::parse(resolve_doc(system_spec))}, {"letter", letter}};
    if (!config_spec.empty()) doc["config"] = json::parse(resolve_doc(config_spec));
    return doc;
}

int run_intersect(const json& job, const RunStamp& stamp, const std::string& out_dir, int render_px) {
    char* out_c = nullptr;
    check(clab_intersection_test(job.dump().c_str(), &out_c));
    json verdict = json::parse(take_string(out_c));

    fs::create_directories(out_dir);
    json covers;
    if (verdict.contains("covers")) {
        covers = verdict.at("covers");
        verdict.erase("covers");
    }
    write_file(fs::path(out_dir) / "verdict.json", stamp.annotate(verdict).dump(2) + "\n");
    if (!covers.is_null()) {
        std::vector<json> disk_lists;
        json da = json::array(), db = json::array();
        for (const auto& cd : covers.at("a")) da.push_back(cd.at("disk"));
        for (const auto& cd : covers.at("b")) db.push_back(cd.at("disk"));
        disk_lists.push_back(da);
        disk_lists.push_back(db);
        Canvas canvas(render_px, render_px);
        Frame frame = frame_of_disks(disk_lists, 0.05);
        splat_disks(canvas, frame, da, 0);
        splat_disks(canvas, frame, db, 1);
        write_file(fs::path(out_dir) / "covers.ppm", canvas.to_ppm(stamp.comment_line()));
    }
    std::printf("verdict=%s depth=%d\n", verdict.at("kind").get<std::string>().c_str(),
                verdict.at("depth").get<int>());
    return kExitOk;
}

int run_kronecker(const json& zj, const json& wj, const json& vj, double delta, int m_max,
                  int n_max, double tol, int coeff_bound, const std::string& out_dir) {
    json config{{"command", "kronecker"}, {"z", zj},         {"w", wj},
                {"v", vj},                {"delta", delta},  {"m_max", m_max},
                {"n_max", n_max},         {"tol", tol},      {"coeff_bound", coeff_bound}};
    RunStamp stamp = RunStamp::make(config);

    char* gen_c = nullptr;
    check(clab_kronecker_genericity(zj.at(0).get<double>(), zj.at(1).get<double>(),
                                    wj.at(0).get<double>(), wj.at(1).get<double>(), tol,
                                    coeff_bound, &gen_c));
    json gen = json::parse(take_string(gen_c));

    json job{{"z", zj}, {"w", wj}, {"v", vj}, {"delta", delta}, {"m_max", m_max}};
    if (n_max > 0) job["n_max"] = n_max;
    char* pairs_c = nullptr;
    check(clab_kronecker_pairs(job.dump().c_str(), &pairs_c));
    json pairs = json::parse(take_string(pairs_c));

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "genericity.json", stamp.annotate(gen).dump(2) + "\n");
    write_file(fs::path(out_dir) / "pairs.json", stamp.annotate(pairs).dump(2) + "\n");

    std::ostringstream csv;
    csv << stamp.comment_line() << "\n";
    csv << "m,n,re,im,error\n";
    for (const auto& p : pairs.at("pairs")) {
        csv << p.at("m").get<int>() << "," << p.at("n").get<int>() << ","
            << fmt_double(p.at("value").at(0).get<double>()) << ","
            << fmt_double(p.at("value").at(1).get<double>()) << ","
            << fmt_double(p.at("error").get<double>()) << "\n";
    }
    write_file(fs::path(out_dir) / "pairs.csv", csv.str());

    std::printf("verdict=%s pairs=%zu -> %s\n", gen.at("verdict").get<std::string>().c_str(),
                pairs.at("pairs").size(), out_dir.c_str());
    return kExitOk;
}

int run_scan(const std::string& model_spec, const std::vector<double>& ladder, int grid, int depth,
             double margin, const json& nu, double delta, int m_max, const std::string& out_dir) {
    json config{{"command", "scan"}, {"model", model_spec}, {"eps_ladder", ladder},
                {"grid", grid},      {"depth", depth},      {"margin", margin},
                {"nu", nu},          {"delta", delta},      {"m_max", m_max}};
    RunStamp stamp = RunStamp::make(config);

    ModelHandle model;
    check(clab_model_parse(resolve_doc(model_spec).c_str(), &model.ptr));
    fs::create_directories(out_dir);

    json ladder_rows = json::array();
    double liminf_proxy = 1.0;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        json params{{"eps", ladder[i]}, {"grid", grid},     {"depth", depth},
                    {"margin", margin}, {"with_mask", true}};
        char* row_c = nullptr;
        check(clab_model_scan(model.ptr, params.dump().c_str(), &row_c));
        json row = json::parse(take_string(row_c));

        std::string tag = "eps" + std::to_string(i);
        write_file(fs::path(out_dir) / ("mask_" + tag + ".ppm"), render_mask_ppm(row, stamp));
        // Per-cell CSV; cell centers follow the row-major grid of the scan.
        std::ostringstream csv;
        csv << stamp.comment_line() << "\n";
        csv << "mu_re,mu_im,verdict\n";
        const double eps = ladder[i];
        const double step = 2.0 * eps / grid;
        const char* names[4] = {"outside", "certified_empty", "robust_nonempty", "unknown"};
        for (int r = 0; r < grid; ++r) {
            const std::string line = row.at("mask").at(r).get<std::string>();
            for (int c = 0; c < grid; ++c) {
                if (line[c] == '0') continue;
                csv << fmt_double(-eps + (c + 0.5) * step) << ","
                    << fmt_double(-eps + (r + 0.5) * step) << "," << names[line[c] - '0'] << "\n";
            }
        }
        write_file(fs::path(out_dir) / ("mask_" + tag + ".csv"), csv.str());

        row.erase("mask");
        if (m_max > 0) {
            json dparams{{"nu", nu}, {"delta", delta}, {"m_max", m_max}, {"eps", ladder[i]}};
            char* bound_c = nullptr;
            check(clab_model_density_bound(model.ptr, dparams.dump().c_str(), &bound_c));
            row["analytic"] = json::parse(take_string(bound_c));
        }
        liminf_proxy = std::min(liminf_proxy, row.at("fraction").get<double>());
        ladder_rows.push_back(row);
        std::printf("eps=%s fraction=%s unknown=%s\n", fmt_double(ladder[i]).c_str(),
                    fmt_double(row.at("fraction").get<double>()).c_str(),
                    fmt_double(row.at("unknown_fraction").get<double>()).c_str());
    }
    json out{{"ladder", ladder_rows}, {"liminf_proxy", liminf_proxy}};
    write_file(fs::path(out_dir) / "density.json", stamp.annotate(out).dump(2) + "\n");
    std::printf("liminf proxy over the ladder: %s -> %s\n", fmt_double(liminf_proxy).c_str(),
                out_dir.c_str());
    return kExitOk;
}

int run_density(const std::string& model_spec, const std::vector<double>& ladder, const json& nu,
                double delta, int m_max, int n_max, const std::string& out_dir) {
    json config{{"command", "density"}, {"model", model_spec}, {"eps_ladder", ladder},
                {"nu", nu},             {"delta", delta},      {"m_max", m_max},
                {"n_max", n_max}};
    RunStamp stamp = RunStamp::make(config);

    ModelHandle model;
    check(clab_model_parse(resolve_doc(model_spec).c_str(), &model.ptr));
    char* summary_c = nullptr;
    check(clab_model_summary(model.ptr, &summary_c));
    json summary = json::parse(take_string(summary_c));

    json rows = json::array();
    for (double eps : ladder) {
        json params{{"nu", nu}, {"delta", delta}, {"m_max", m_max}, {"eps", eps}};
        if (n_max > 0) params["n_max"] = n_max;
        char* bound_c = nullptr;
        check(clab_model_density_bound(model.ptr, params.dump().c_str(), &bound_c));
        json row = json::parse(take_string(bound_c));
        rows.push_back(row);
        std::printf("eps=%s analytic_bound=%s\n", fmt_double(eps).c_str(),
                    fmt_double(row.value("bound", 0.0)).c_str());
    }
    json out{{"summary", summary}, {"ladder", rows}};
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "density.json", stamp.annotate(out).dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cantorlab: planar Cantor-set renormalization and tangency-density experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("cantorlab ") + clab_version());

    // validate
    auto* validate = app.add_subcommand("validate", "check the axioms of a system document");
    std::string v_system;
    bool v_json = false;
    validate->add_option("--system", v_system, "system JSON file, builtin:<name>, or inline JSON")
        ->required();
    validate->add_flag("--json", v_json, "print the full report as JSON");

    // limit-geometry
    auto* lg = app.add_subcommand("limit-geometry", "converged limit geometry along a tail");
    std::string lg_system, lg_tail, lg_out = "out";
    double lg_tol = 1e-8;
    int lg_max_depth = 40, lg_render = 512;
    lg->add_option("--system", lg_system)->required();
    lg->add_option("--tail", lg_tail, "eventually periodic tail, e.g. 'a' or 'a,b|a'")->required();
    lg->add_option("--tol", lg_tol, "sup-norm Cauchy tolerance");
    lg->add_option("--max-depth", lg_max_depth);
    lg->add_option("--render", lg_render, "PPM size in pixels");
    lg->add_option("--out", lg_out)->required();

    // intersect
    auto* is = app.add_subcommand("intersect", "disk-cover intersection verdict for two configured sets");
    std::string is_sys_a, is_sys_b, is_letter_a = "a", is_letter_b = "a";
    std::string is_config_a, is_config_b, is_out = "out";
    int is_depth = 10, is_render = 512;
    double is_margin = 0.05;
    bool is_covers = false;
    is->add_option("--system-a", is_sys_a)->required();
    is->add_option("--system-b", is_sys_b)->required();
    is->add_option("--letter-a", is_letter_a);
    is->add_option("--letter-b", is_letter_b);
    is->add_option("--config-a", is_config_a, "map AST file or inline JSON (default identity)");
    is->add_option("--config-b", is_config_b);
    is->add_option("--depth", is_depth);
    is->add_option("--margin", is_margin, "relative overlap needed for a robust verdict");
    is->add_flag("--covers", is_covers, "emit final covers and render covers.ppm");
    is->add_option("--render", is_render);
    is->add_option("--out", is_out)->required();

    // probe
    auto* pr = app.add_subcommand("probe", "stable-intersection probe under random perturbations");
    std::string pr_sys_a, pr_sys_b, pr_letter_a = "a", pr_letter_b = "a";
    std::string pr_config_a, pr_config_b, pr_out = "out";
    int pr_depth = 6, pr_samples = 100;
    double pr_margin = 0.05, pr_eps_branch = 1e-3, pr_eps_config = 1e-3;
    std::uint64_t pr_seed = 0;
    pr->add_option("--system-a", pr_sys_a)->required();
    pr->add_option("--system-b", pr_sys_b)->required();
    pr->add_option("--letter-a", pr_letter_a);
    pr->add_option("--letter-b", pr_letter_b);
    pr->add_option("--config-a", pr_config_a);
    pr->add_option("--config-b", pr_config_b);
    pr->add_option("--depth", pr_depth);
    pr->add_option("--margin", pr_margin);
    pr->add_option("--eps-branch", pr_eps_branch, "branch-coefficient perturbation radius");
    pr->add_option("--eps-config", pr_eps_config, "configuration perturbation radius");
    pr->add_option("--samples", pr_samples);
    pr->add_option("--seed", pr_seed);
    pr->add_option("--out", pr_out)->required();

    // kronecker
    auto* kr = app.add_subcommand("kronecker", "exponent-pair search and genericity report");
    std::string kr_z, kr_w, kr_v = "1", kr_out = "out";
    double kr_delta = 0.1, kr_tol = 1e-9;
    int kr_m_max = 400, kr_n_max = -1, kr_coeff = 50;
    kr->add_option("--z", kr_z, "complex literal 're' or 're,im'")->required();
    kr->add_option("--w", kr_w)->required();
    kr->add_option("--v", kr_v, "target value");
    kr->add_option("--delta", kr_delta);
    kr->add_option("--m-max", kr_m_max);
    kr->add_option("--n-max", kr_n_max);
    kr->add_option("--tol", kr_tol, "independence tolerance");
    kr->add_option("--coeff-bound", kr_coeff);
    kr->add_option("--out", kr_out)->required();

    // scan
    auto* sc = app.add_subcommand("scan", "tangency-parameter scan over an epsilon ladder");
    std::string sc_model, sc_ladder = "0.125,0.0625,0.03125,0.015625,0.0078125", sc_out = "out";
    std::string sc_nu = "0.1";
    int sc_grid = 256, sc_depth = 6, sc_m_max = 0;
    double sc_margin = 0.05, sc_delta = 0.05;
    sc->add_option("--model", sc_model, "model JSON file, builtin:<name>, or inline JSON")->required();
    sc->add_option("--eps-ladder", sc_ladder, "comma-separated epsilon values");
    sc->add_option("--grid", sc_grid);
    sc->add_option("--depth", sc_depth);
    sc->add_option("--margin", sc_margin);
    sc->add_option("--nu", sc_nu, "pair target shift for the analytic bound");
    sc->add_option("--delta", sc_delta, "pair tolerance for the analytic bound");
    sc->add_option("--m-max", sc_m_max, "exponent search range; 0 skips the analytic bound");
    sc->add_option("--out", sc_out)->required();

    // density
    auto* de = app.add_subcommand("density", "analytic lower bound along the exponent-pair ladder");
    std::string de_model, de_ladder = "0.125,0.0625,0.03125,0.015625,0.0078125", de_out = "out";
    std::string de_nu = "0.1";
    double de_delta = 0.05;
    int de_m_max = 40, de_n_max = -1;
    de->add_option("--model", de_model)->required();
    de->add_option("--eps-ladder", de_ladder);
    de->add_option("--nu", de_nu);
    de->add_option("--delta", de_delta);
    de->add_option("--m-max", de_m_max);
    de->add_option("--n-max", de_n_max);
    de->add_option("--out", de_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(v_system, v_json);
        if (lg->parsed()) {
            return run_limit_geometry(lg_system, lg_tail, lg_tol, lg_max_depth, lg_render, lg_out);
        }
        if (is->parsed()) {
            json job{{"a", configured_doc(is_sys_a, is_letter_a, is_config_a)},
                     {"b", configured_doc(is_sys_b, is_letter_b, is_config_b)},
                     {"max_depth", is_depth},
                     {"margin", is_margin},
                     {"emit_covers", is_covers}};
            RunStamp stamp = RunStamp::make(json{{"command", "intersect"}, {"job", job}});
            return run_intersect(job, stamp, is_out, is_render);
        }
        if (pr->parsed()) {
            json job{{"a", configured_doc(pr_sys_a, pr_letter_a, pr_config_a)},
                     {"b", configured_doc(pr_sys_b, pr_letter_b, pr_config_b)},
                     {"max_depth", pr_depth},
                     {"margin", pr_margin},
                     {"perturbation", json{{"eps_branch", pr_eps_branch},
                                           {"eps_config", pr_eps_config},
                                           {"samples", pr_samples},
                                           {"seed", pr_seed}}}};
            RunStamp stamp = RunStamp::make(json{{"command", "probe"}, {"job", job}});
            char* out_c = nullptr;
            check(clab_stable_probe(job.dump().c_str(), &out_c));
            json rep = json::parse(take_string(out_c));
            fs::create_directories(pr_out);
            write_file(fs::path(pr_out) / "probe.json", stamp.annotate(rep).dump(2) + "\n");
            std::printf("pass_fraction=%s rejected=%d\n",
                        fmt_double(rep.at("pass_fraction").get<double>()).c_str(),
                        rep.at("rejected").get<int>());
            return kExitOk;
        }
        if (kr->parsed()) {
            return run_kronecker(parse_complex(kr_z), parse_complex(kr_w), parse_complex(kr_v),
                                 kr_delta, kr_m_max, kr_n_max, kr_tol, kr_coeff, kr_out);
        }
        if (sc->parsed()) {
            return run_scan(sc_model, parse_ladder(sc_ladder), sc_grid, sc_depth, sc_margin,
                            parse_complex(sc_nu), sc_delta, sc_m_max, sc_out);
        }
        if (de->parsed()) {
            return run_density(de_model, parse_ladder(de_ladder), parse_complex(de_nu), de_delta,
                               de_m_max, de_n_max, de_out);
        }
    } catch (const LibError& e) {
        std::fprintf(stderr, "error (%s): %s\n", clab_status_name(e.status), e.message.c_str());
        return e.status == CLAB_ERR_PARSE ? kExitUsage : kExitDomain;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    }
    return kExitUsage;
}
