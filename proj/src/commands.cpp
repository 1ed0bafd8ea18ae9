#include "commands.hpp"

#include <pcurv/accessory.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pcurv::cli {

namespace {

using Lam = RatFunc<Fp>;
using LamField = RatFuncField<Fp>;

bool mentions_lambda(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens)
        if (t.find('L') != std::string::npos) return true;
    return false;
}

// integers and linear lambda expressions: "0", "-1", "L", "-L", "2L+3",
// "3+2L", "2*L-1"
std::pair<std::int64_t, std::int64_t> parse_linear(const std::string& s) {
    std::int64_t cl = 0, cc = 0;  // coefficient of L, constant
    std::size_t i = 0;
    if (s.empty()) throw UsageError("empty element");
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            sign = -1;
            ++i;
        }
        std::int64_t digits = 0;
        bool have_digits = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits = digits * 10 + (s[i] - '0');
            have_digits = true;
            ++i;
        }
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == 'L') {
            ++i;
            cl += sign * (have_digits ? digits : 1);
        } else if (have_digits) {
            cc += sign * digits;
        } else {
            throw UsageError("cannot parse element '" + s + "'");
        }
    }
    return {cl, cc};
}

Lam parse_lambda_elem(const LamField& lamf, const std::string& s) {
    auto [cl, cc] = parse_linear(s);
    return lamf.variable() * lamf.from_int(cl) + lamf.from_int(cc);
}

Fp parse_fp_elem(const FpField& f, const std::string& s) {
    auto [cl, cc] = parse_linear(s);
    if (cl != 0) throw UsageError("lambda in a prime-field element");
    return f.from_int(cc);
}

template <class K>
Json exponents_json(const std::vector<ExponentPair<K>>& exps) {
    Json arr = Json::array();
    for (const auto& e : exps) {
        Json one;
        one["point"] = e.at_infinity ? "inf" : fmt(e.point);
        one["in_prime_field"] = e.in_prime_field;
        if (e.in_prime_field) {
            one["alpha"] = e.alpha;
            one["alpha_prime"] = e.alpha_prime;
        }
        arr.push_back(std::move(one));
    }
    return arr;
}

template <class K>
Json datum_json(const DeformationDatum<K>& datum) {
    Json j;
    j["d"] = datum.d;
    j["strength_n"] = datum.strength_n;
    j["spikes"] = datum.spike_count();
    Json sig = Json::array();
    for (const auto& s : datum.signature()) sig.push_back(s.str());
    j["signature"] = std::move(sig);
    Json pts = Json::array();
    for (const auto& cp : datum.points) {
        Json one;
        switch (cp.loc) {
            case CriticalPoint<K>::Loc::Finite:
                one["location"] = fmt(*cp.point);
                break;
            case CriticalPoint<K>::Loc::Infinity:
                one["location"] = "inf";
                break;
            case CriticalPoint<K>::Loc::Placeholder:
                one["location"] = cp.minpoly
                                      ? "root of " + fmt_poly(*cp.minpoly, "y")
                                      : "y = " + fmt(*cp.point);
                one["frobenius_image"] = true;
                break;
            default:
                one["location"] = "abstract";
        }
        one["kind"] = to_string(cp.kind);
        one["a"] = cp.a;
        one["nu"] = cp.nu;
        one["sigma"] = cp.sigma(datum.p).str();
        one["m"] = cp.m;
        one["n_x"] = cp.n_x;
        one["epsilon"] = cp.epsilon;
        if (cp.count != 1) one["count"] = cp.count;
        pts.push_back(std::move(one));
    }
    j["critical_points"] = std::move(pts);
    j["supersingular_count"] = datum.d;
    if (datum.u) j["u"] = fmt_poly(*datum.u, "x");
    if (datum.Q) j["Q"] = fmt_poly(*datum.Q, "x");
    if (datum.eps_pm1) j["eps_pm1"] = fmt(*datum.eps_pm1);
    Json kum = Json::array();
    for (const auto& e : kummer_exponents(datum)) {
        Json one;
        one["location"] = e.location;
        one["a"] = e.a;
        one["m"] = e.m;
        if (e.count != 1) one["count"] = e.count;
        kum.push_back(std::move(one));
    }
    j["kummer_exponents"] = std::move(kum);
    auto ls = log_space_dim(datum);
    j["log_space_dim"] = ls.dim;
    j["N"] = ls.N;
    auto dim = deformation_dimension(datum);
    j["deformation_dim"] = dim.dim;
    j["maximal"] = dim.maximal;
    auto bad = validate_datum(datum);
    j["violations"] = bad;
    return j;
}

template <class K>
Json classification_json(const FuchsianOperator<K>& L, const PCurvatureReport<K>& rep,
                         Json* diagnostics) {
    Json res;
    res["class"] = to_string(rep.cls);
    res["exponents"] = exponents_json(rep.exponents);
    if (rep.solutions.minimal) {
        res["minimal_solution"] = fmt_poly(rep.solutions.minimal->first, "x");
        res["minimal_degree"] = rep.solutions.minimal->second;
    }
    if (rep.solutions.second) {
        res["second_solution"] = fmt_poly(rep.solutions.second->first, "x");
        res["second_degree"] = rep.solutions.second->second;
    }
    res["rank_mod_p_powers"] = rep.solutions.rank_mod_p_powers;
    if (rep.Q) res["Q"] = fmt_poly(*rep.Q, "x");
    if (rep.cls == PClass::NilpotentNonzero) {
        auto datum = extract_datum(L, rep.solutions.minimal->first, rep);
        res["datum"] = datum_json(datum);
        if (diagnostics) {
            Json warn = Json::array();
            for (const auto& cp : datum.points) {
                if (cp.loc == CriticalPoint<K>::Loc::Infinity) continue;
                if (cp.n_x_ord != cp.n_x)
                    warn.push_back("ord-formula n_x=" + std::to_string(cp.n_x_ord) +
                                   " differs from n_x=" + std::to_string(cp.n_x));
            }
            if (datum.rastdef_readings_differ)
                warn.push_back("epsilon index-range readings differ on this datum");
            (*diagnostics)["warnings"] = std::move(warn);
        }
    }
    return res;
}

Json base_report(const std::string& command) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = command;
    return j;
}

Json search_report_json(const SearchReport& rep) {
    Json j;
    j["p"] = rep.p;
    j["r"] = rep.r;
    j["alpha"] = rep.alpha;
    j["field"] = rep.field_desc;
    j["singularities"] = rep.singularities;
    j["scanned"] = rep.scanned;
    Json hits = Json::array();
    for (const auto& h : rep.hits) {
        Json one;
        one["beta"] = h.beta;
        one["class"] = h.cls;
        one["min_degree"] = h.min_degree;
        if (h.second_degree >= 0) one["second_degree"] = h.second_degree;
        if (h.n >= 0) one["n"] = h.n;
        if (h.spikes >= 0) one["spikes"] = h.spikes;
        if (!h.signature.empty()) one["signature"] = h.signature;
        one["datum_valid"] = h.datum_valid;
        hits.push_back(std::move(one));
    }
    j["hits"] = std::move(hits);
    j["nilpotent_nonzero"] = rep.nilpotent_nonzero;
    j["zero_curvature"] = rep.zero_curvature;
    j["pi_degree_nilpotent"] = rep.pi_degree_nilpotent;
    j["pi_degree_bound"] = rep.pi_degree_bound;
    if (rep.bezout_bound > 0) j["bezout_bound"] = rep.bezout_bound;
    if (!rep.wall_notes.empty()) j["wall_notes"] = rep.wall_notes;
    return j;
}

std::uint64_t derive_d(std::uint64_t p, int r, const std::vector<std::uint64_t>& alpha) {
    std::uint64_t asum = 0;
    for (auto a : alpha) asum = (asum + a) % p;
    return detail::mulmod((asum + 2 * p - static_cast<std::uint64_t>(r - 2) % p) % p,
                          detail::powmod(2, p - 2, p), p);
}

}  // namespace

Json cmd_classify(const ClassifyOptions& opt) {
    if (opt.p < 3) throw UsageError("p must be an odd prime");
    const int r = static_cast<int>(opt.singularities.size()) + 1;
    if (r < 3) throw UsageError("need at least two finite singularities");
    if (opt.alpha.size() != static_cast<std::size_t>(r))
        throw UsageError("alpha must have r entries (one per singularity, infinity last)");
    if (opt.beta.size() + 3 != static_cast<std::size_t>(r))
        throw UsageError("beta must have r-3 entries");
    Json j = base_report("classify");
    Json cfg;
    cfg["p"] = opt.p;
    cfg["r"] = r;
    cfg["alpha"] = opt.alpha;
    cfg["singularities"] = opt.singularities;
    cfg["beta"] = opt.beta;
    std::uint64_t d = opt.d ? *opt.d : derive_d(opt.p, r, opt.alpha);
    cfg["d"] = d;
    Json diagnostics;
    diagnostics["warnings"] = Json::array();
    Json results;
    bool lambda = mentions_lambda(opt.singularities) || mentions_lambda(opt.beta);
    if (lambda) {
        FpField fp(opt.p);
        LamField lamf(fp);
        std::vector<Lam> sing, beta;
        for (const auto& s : opt.singularities) sing.push_back(parse_lambda_elem(lamf, s));
        for (const auto& s : opt.beta) beta.push_back(parse_lambda_elem(lamf, s));
        cfg["field"] = "F_" + std::to_string(opt.p) + "(L)";
        auto L = make_normalized<Lam>(lamf, opt.p, sing, opt.alpha, d, beta);
        auto rep = classify(L);
        results = classification_json(L, rep, &diagnostics);
    } else {
        FpField fp(opt.p);
        std::vector<Fp> sing, beta;
        for (const auto& s : opt.singularities) sing.push_back(parse_fp_elem(fp, s));
        for (const auto& s : opt.beta) beta.push_back(parse_fp_elem(fp, s));
        cfg["field"] = "F_" + std::to_string(opt.p);
        auto L = make_normalized<Fp>(fp, opt.p, sing, opt.alpha, d, beta);
        auto rep = classify(L);
        results = classification_json(L, rep, &diagnostics);
    }
    j["config"] = std::move(cfg);
    j["results"] = std::move(results);
    j["diagnostics"] = std::move(diagnostics);
    return j;
}

Json cmd_search(const SearchOptions& opt) {
    if (opt.p < 3) throw UsageError("p must be an odd prime");
    Json j = base_report("search");
    Json cfg;
    cfg["p"] = opt.p;
    cfg["alpha"] = opt.alpha;
    if (opt.generic_lambda) {
        if (!opt.degree) throw UsageError("--generic-lambda needs --degree");
        if (opt.alpha.size() != 4) throw UsageError("--generic-lambda needs 4 exponents (r = 4)");
        cfg["mode"] = "existence-polynomial";
        cfg["degree"] = *opt.degree;
        cfg["field"] = "F_" + std::to_string(opt.p) + "(L)";
        j["config"] = std::move(cfg);
        FpField fp(opt.p);
        LamField lamf(fp);
        auto R = existence_polynomial_r4<Fp>(lamf, opt.p, opt.alpha, *opt.degree);
        Json results;
        results["existence_polynomial"] = fmt_poly(R, "B");
        results["beta_degree"] = R.degree();
        Json roots = Json::array();
        for (auto&& [root, mult] : roots_over<Lam>(lamf, R)) {
            Json one;
            one["beta"] = fmt(root);
            one["multiplicity"] = mult;
            roots.push_back(std::move(one));
        }
        results["roots_linear_in_lambda"] = std::move(roots);
        j["results"] = std::move(results);
        j["diagnostics"] = Json::object({{"warnings", Json::array()}});
        return j;
    }
    int r = opt.r;
    std::vector<std::string> singstr = opt.singularities;
    if (singstr.empty()) {
        singstr = {"0", "1"};
        if (opt.lambda) singstr.push_back(*opt.lambda);
    }
    if (r == 0) r = static_cast<int>(singstr.size()) + 1;
    if (static_cast<std::size_t>(r) != singstr.size() + 1)
        throw UsageError("r does not match the singularity list");
    if (opt.alpha.size() != static_cast<std::size_t>(r)) throw UsageError("alpha must have r entries");
    if (mentions_lambda(singstr)) throw UsageError("grid mode needs specialized singularities");
    cfg["mode"] = "grid";
    cfg["r"] = r;
    cfg["singularities"] = singstr;
    cfg["budget"] = opt.budget;
    j["config"] = std::move(cfg);
    FpField fp(opt.p);
    std::vector<Fp> sing;
    for (const auto& s : singstr) sing.push_back(parse_fp_elem(fp, s));
    auto rep = grid_search<Fp>(fp, opt.p, r, opt.alpha, sing, opt.budget);
    j["results"] = search_report_json(rep);
    j["diagnostics"] = Json::object({{"warnings", Json::array()}});
    return j;
}

Json cmd_nonempty(const NonemptyOptions& opt) {
    Json j = base_report("nonempty");
    Json cfg;
    cfg["p"] = opt.p;
    cfg["r"] = opt.r;
    cfg["n"] = opt.n;
    cfg["budget"] = opt.budget;
    j["config"] = std::move(cfg);
    auto res = nonempty_check(opt.p, opt.r, opt.n, opt.budget);
    Json results;
    results["verdict"] = to_string(res.verdict);
    if (!res.violated.empty()) results["violated"] = res.violated;
    if (res.witness) results["witness"] = search_report_json(*res.witness);
    if (!res.notes.empty()) results["notes"] = res.notes;
    j["results"] = std::move(results);
    j["diagnostics"] = Json::object({{"warnings", Json::array()}});
    return j;
}

Json cmd_dimension(const DimensionOptions& opt) {
    Json j = base_report("dimension");
    Json cfg;
    cfg["p"] = opt.p;
    cfg["signature"] = opt.signature;
    j["config"] = std::move(cfg);
    std::vector<std::pair<int, int>> pts;
    std::stringstream ss(opt.signature);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto pos = item.find(':');
        if (pos == std::string::npos) throw UsageError("signature entries are a:nu pairs");
        pts.push_back({std::stoi(item.substr(0, pos)), std::stoi(item.substr(pos + 1))});
    }
    FpField fp(opt.p);
    auto datum = make_synthetic_datum<Fp>(fp, opt.p, pts);
    if (opt.d && *opt.d != datum.d)
        throw Error("dimension: supplied d=" + std::to_string(*opt.d) +
                    " disagrees with the signature (d=" + std::to_string(datum.d) + ")");
    Json results = datum_json(datum);
    j["results"] = std::move(results);
    j["diagnostics"] = Json::object({{"warnings", Json::array()}});
    return j;
}

namespace {

Json example_gauss() {
    Json j = base_report("example gauss");
    Json cases = Json::array();
    for (std::uint64_t p : {5ull, 7ull, 13ull}) {
        FpField fp(p);
        auto L = make_normalized<Fp>(fp, p, {fp.zero(), fp.one()},
                                     std::vector<std::uint64_t>(3, 0), (p - 1) / 2, {});
        auto rep = classify(L);
        Json one;
        one["p"] = p;
        one["class"] = to_string(rep.cls);
        const auto& u = rep.solutions.minimal->first;
        one["minimal_degree"] = rep.solutions.minimal->second;
        one["u"] = fmt_poly(u, "x");
        auto datum = extract_datum(L, u, rep);
        one["n"] = strength(datum);
        // the two binomial forms: sum binom(p-1, i)^2 x^i (the display) and
        // sum binom((p-1)/2, i)^2 x^i (the classical Hasse polynomial)
        const std::size_t m = (p - 1) / 2;
        std::vector<long long> full(p, 0), half(m + 1, 0);
        full[0] = half[0] = 1;
        for (std::size_t n = 1; n <= p - 1; ++n)
            for (std::size_t i = std::min<std::size_t>(n, p - 1); i >= 1; --i)
                full[i] += full[i - 1];
        for (std::size_t n = 1; n <= m; ++n)
            for (std::size_t i = n; i >= 1; --i) half[i] += half[i - 1];
        auto square_poly = [&](const std::vector<long long>& b, std::size_t upto) {
            std::vector<Fp> c;
            for (std::size_t i = 0; i <= upto; ++i) {
                auto v = fp.from_int(b[i]);
                c.push_back(v * v);
            }
            return Poly<Fp>(fp, std::move(c));
        };
        auto displayed = square_poly(full, m);
        auto classical = square_poly(half, m);
        one["binom_full_display"] = fmt_poly(displayed, "x");
        one["matches_binom_full"] = (u == displayed);
        one["binom_half_display"] = fmt_poly(classical, "x");
        one["matches_binom_half"] = (u == classical);
        cases.push_back(std::move(one));
    }
    j["results"] = Json::object({{"cases", std::move(cases)}});
    j["diagnostics"] = Json::object(
        {{"warnings",
          Json::array({"the kernel solution is authoritative where the binomial forms disagree"})}});
    return j;
}

Json example_p7() {
    Json j = base_report("example p7");
    FpField fp(7);
    LamField lamf(fp);
    auto lam = lamf.variable();
    Json results;
    auto R2 = existence_polynomial_r4<Fp>(lamf, 7, {5, 5, 5, 5}, 2);
    auto R4 = existence_polynomial_r4<Fp>(lamf, 7, {5, 5, 5, 5}, 4);
    results["existence_degree_2"] = fmt_poly(R2, "B");
    results["existence_degree_4"] = fmt_poly(R4, "B");
    Json roots = Json::array();
    std::vector<Lam> sing{lamf.zero(), lamf.one(), lam};
    for (auto&& [beta, mult] : roots_over<Lam>(lamf, R2)) {
        auto L = make_normalized<Lam>(lamf, 7, sing, {5, 5, 5, 5}, 2, {beta});
        auto rep = classify(L);
        Json one;
        one["beta"] = fmt(beta);
        one["class"] = to_string(rep.cls);
        auto datum = extract_datum(L, rep.solutions.minimal->first, rep);
        one["d"] = datum.d;
        one["n"] = datum.strength_n;
        Json sig = Json::array();
        for (const auto& s : datum.signature()) sig.push_back(s.str());
        one["signature"] = std::move(sig);
        one["datum_valid"] = validate_datum(datum).empty();
        roots.push_back(std::move(one));
    }
    results["degree_2_roots"] = std::move(roots);
    // beta on the degree-4 conic: zero p-curvature with a second solution of
    // degree 9
    {
        Poly<Lam> mod = R4;
        AlgExtField<Lam> ext(mod);
        std::vector<AlgExt<Lam>> esing{ext.zero(), ext.one(), ext.from_base(lam)};
        auto L = make_normalized<AlgExt<Lam>>(ext, 7, esing, {5, 5, 5, 5}, 2, {ext.generator()});
        auto rep = classify(L);
        Json one;
        one["class"] = to_string(rep.cls);
        one["min_degree"] = rep.solutions.minimal->second;
        one["second_degree"] = rep.solutions.second->second;
        results["degree_4_conic"] = std::move(one);
    }
    j["results"] = std::move(results);
    j["diagnostics"] = Json::object({{"warnings", Json::array()}});
    return j;
}

Json example_p13() {
    Json j = base_report("example p13");
    FpField fp(13);
    LamField lamf(fp);
    auto lam = lamf.variable();
    Json results;
    auto R1 = existence_polynomial_r4<Fp>(lamf, 13, {11, 11, 11, 10}, 1);
    auto R4 = existence_polynomial_r4<Fp>(lamf, 13, {11, 11, 11, 10}, 4);
    results["existence_degree_1"] = fmt_poly(R1, "B");
    results["existence_degree_4"] = fmt_poly(R4, "B");
    {
        // exact extraction over F_13(lambda)[beta]
        AlgExtField<Lam> ext(R1);
        std::vector<AlgExt<Lam>> esing{ext.zero(), ext.one(), ext.from_base(lam)};
        auto L = make_normalized<AlgExt<Lam>>(ext, 13, esing, {11, 11, 11, 10}, 1,
                                              {ext.generator()});
        auto rep = classify(L);
        auto datum = extract_datum(L, rep.solutions.minimal->first, rep);
        Json one;
        one["class"] = to_string(rep.cls);
        one["d"] = datum.d;
        one["n"] = datum.strength_n;
        one["spikes"] = datum.spike_count();
        Json sig = Json::array();
        for (const auto& s : datum.signature()) sig.push_back(s.str());
        one["signature"] = std::move(sig);
        one["datum_valid"] = validate_datum(datum).empty();
        results["degree_1_family"] = std::move(one);
    }
    {
        Json spec = Json::array();
        for (std::int64_t lam0 : {2, 3}) {
            Json one;
            one["lambda"] = lam0;
            auto r22 = classify_beta_roots(13, {11, 11, 11, 10}, fp.from_int(lam0),
                                           specialize_lambda(R1, fp.from_int(lam0)));
            auto r16 = classify_beta_roots(13, {11, 11, 11, 10}, fp.from_int(lam0),
                                           specialize_lambda(R4, fp.from_int(lam0)));
            long long c22 = 0, c16 = 0;
            for (const auto& e : r22)
                if (e.cls == "NilpotentNonzero" && e.n == 22) c22 += e.count;
            for (const auto& e : r16)
                if (e.cls == "NilpotentNonzero" && e.n == 16) c16 += e.count;
            one["count_n22"] = c22;
            one["count_n16"] = c16;
            spec.push_back(std::move(one));
        }
        results["specializations"] = std::move(spec);
    }
    j["results"] = std::move(results);
    j["diagnostics"] = Json::object({{"warnings", Json::array()}});
    return j;
}

}  // namespace

Json cmd_example(const std::string& name) {
    if (name == "gauss") return example_gauss();
    if (name == "p7") return example_p7();
    if (name == "p13") return example_p13();
    throw UsageError("unknown example '" + name + "' (expected gauss, p7 or p13)");
}

namespace {

void csv_walk(const Json& j, const std::string& path, std::string& out) {
    auto quote = [](std::string v) {
        if (v.find_first_of(",\"\n") == std::string::npos) return v;
        std::string q = "\"";
        for (char c : v) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        q += "\"";
        return q;
    };
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            csv_walk(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& e : j) csv_walk(e, path + "[" + std::to_string(i++) + "]", out);
    } else if (j.is_string()) {
        out += path + "," + quote(j.get<std::string>()) + "\n";
    } else {
        out += path + "," + j.dump() + "\n";
    }
}

}  // namespace

std::string to_csv(const Json& j) {
    std::string out = "key,value\n";
    csv_walk(j, "", out);
    return out;
}

std::string to_output(const Json& j, const std::string& format) {
    if (format == "csv") return to_csv(j);
    if (format == "json") return j.dump(2) + "\n";
    throw UsageError("unknown format '" + format + "'");
}

}  // namespace pcurv::cli
