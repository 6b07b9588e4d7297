#include "typea/emitters.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace typea {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

namespace {

OrderedJson witness_json(const LogGeodesicSolution& s) {
    OrderedJson w = OrderedJson::object();
    w["a"] = s.a;
    w["b"] = s.b;
    return w;
}

OrderedJson form_json(const SymmetricBilinear& m) { return OrderedJson::array({{m.m11, m.m12}, {m.m12, m.m22}}); }

}  // namespace

OrderedJson verdict_json(const CompletenessVerdict& verdict) {
    OrderedJson j = OrderedJson::object();
    j["branch"] = to_string(verdict.kind());
    j["rank"] = verdict.ricci.rank;
    j["definiteness"] = to_string(verdict.ricci.definiteness);
    if (verdict.invariants) {
        j["sigma"] = verdict.invariants->sigma;
        j["psi"] = verdict.invariants->psi;
    }
    if (const auto* complete = std::get_if<Rank2Complete>(&verdict.branch)) j["delta"] = complete->delta;
    OrderedJson witnesses = OrderedJson::array();
    for (const LogGeodesicSolution& s : verdict.witnesses()) witnesses.push_back(witness_json(s));
    j["witnesses"] = std::move(witnesses);
    if (const auto* sym = std::get_if<Rank1Symmetric>(&verdict.branch)) j["model"] = to_string(sym->model);
    if (const auto complete = verdict.model_complete()) j["model_complete"] = *complete;
    if (const auto essential = verdict.essentially_complete()) j["essentially_complete"] = *essential;

    OrderedJson notes = OrderedJson::array();
    switch (verdict.kind()) {
        case BranchKind::FlatUndetermined:
            notes.push_back("flat connection: no completeness verdict");
            break;
        case BranchKind::Rank1NonSymmetric:
            notes.push_back("rank 1 with nonparallel Ricci tensor: essentially geodesically incomplete");
            break;
        case BranchKind::Rank1Symmetric:
            notes.push_back("symmetric space linearly equivalent to the listed model");
            break;
        case BranchKind::Rank2Incomplete:
            notes.push_back("the curve (a, b) log t is a geodesic for each witness");
            break;
        case BranchKind::Rank2Complete:
            notes.push_back("no log-geodesic; linearly equivalent to M-(delta)");
            break;
    }
    j["notes"] = std::move(notes);
    return j;
}

OrderedJson solutions_json(const std::vector<LogGeodesicSolution>& solutions) {
    OrderedJson out = OrderedJson::array();
    for (const LogGeodesicSolution& s : solutions) {
        OrderedJson j = witness_json(s);
        j["lambda"] = s.lambda ? OrderedJson(*s.lambda) : OrderedJson(nullptr);
        j["family"] = s.family;
        j["residual"] = s.residual;
        out.push_back(std::move(j));
    }
    return out;
}

OrderedJson ricci_json(const ChristoffelSymbols& c, const RicciReport& report) {
    OrderedJson j = OrderedJson::object();
    j["rho"] = form_json(report.rho);
    OrderedJson nabla = OrderedJson::array();
    for (int i = 0; i < 2; ++i) {
        OrderedJson slice = OrderedJson::array();
        for (int a = 0; a < 2; ++a) slice.push_back({report.nabla_rho(i, a, 0), report.nabla_rho(i, a, 1)});
        nabla.push_back(std::move(slice));
    }
    j["nabla_rho"] = std::move(nabla);
    j["rank"] = report.rank;
    j["definiteness"] = to_string(report.definiteness);
    j["symmetric_space"] = report.is_symmetric_space;
    j["rho_check"] = form_json(rho_check(c));
    if (report.rank == 2) {
        const SigmaPsi inv = invariants_sigma_psi(c);
        j["sigma"] = inv.sigma;
        j["psi"] = inv.psi;
    }
    return j;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::string out = "t,x1,x2,v1,v2\n";
    for (const TrajectorySample& s : trajectory.samples) {
        out += format_double(s.t) + ',' + format_double(s.x[0]) + ',' + format_double(s.x[1]) + ',' +
               format_double(s.v[0]) + ',' + format_double(s.v[1]) + '\n';
    }
    out += std::string("# termination=") + to_string(trajectory.termination) +
           " escape=" + (trajectory.escape_time ? format_double(*trajectory.escape_time) : "none") + '\n';
    return out;
}

OrderedJson trajectory_json(const Trajectory& trajectory) {
    OrderedJson j = OrderedJson::object();
    j["termination"] = to_string(trajectory.termination);
    j["escape"] = trajectory.escape_time ? OrderedJson(*trajectory.escape_time) : OrderedJson(nullptr);
    OrderedJson samples = OrderedJson::array();
    for (const TrajectorySample& s : trajectory.samples) {
        OrderedJson row = OrderedJson::object();
        row["t"] = s.t;
        row["x1"] = s.x[0];
        row["x2"] = s.x[1];
        row["v1"] = s.v[0];
        row["v2"] = s.v[1];
        samples.push_back(std::move(row));
    }
    j["samples"] = std::move(samples);
    return j;
}

std::string grid_csv(std::span<const GridRow> rows) {
    std::string out = "u,v,du,dv\n";
    for (const GridRow& r : rows)
        out += format_double(r.u) + ',' + format_double(r.v) + ',' + format_double(r.du) + ',' + format_double(r.dv) +
               '\n';
    return out;
}

std::string flow_curves_csv(std::span<const FlowCurve> curves) {
    std::string out = "curve,t,u,v\n";
    for (std::size_t k = 0; k < curves.size(); ++k)
        for (const FlowSample& s : curves[k].samples)
            out += std::to_string(k) + ',' + format_double(s.t) + ',' + format_double(s.u) + ',' + format_double(s.v) +
                   '\n';
    return out;
}

std::string moduli_csv(std::span<const ModuliCurvePoint> points) {
    std::string out = "branch,t,sigma,psi\n";
    for (const ModuliCurvePoint& p : points)
        out += std::string(to_string(p.branch)) + ',' + format_double(p.t) + ',' + format_double(p.sigma) + ',' +
               format_double(p.psi) + '\n';
    out += "# note: the delta rows follow (Sigma, Psi) = (-3 + 2 delta^2, 2); a prose form (-3 + delta^2, 2) "
           "disagrees with this identity\n";
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::InputDomain, "cannot write " + temp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorKind::InputDomain, "cannot write " + temp.string());
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp, ec);
        throw Error(ErrorKind::InputDomain, "cannot move output into " + path);
    }
}

}  // namespace typea
