#pragma once

// JSON/CSV serialization of the library structures, and the contiguity memo
// cache file. Rationals serialize as "p/q"; high-precision values carry the
// decimal string and the precision they were computed at.

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "periodgram/diameter.hpp"
#include "periodgram/gram.hpp"
#include "periodgram/lattice.hpp"

namespace periodgram {

using Json = nlohmann::ordered_json;

inline Json to_json(const Real& v) {
    return Json{{"decimal", v.str()}, {"precision", v.precision()}};
}

inline Json to_json(const LinearForm& f) {
    return Json{{"const_part", to_string(f.const_part)}, {"xi_part", to_string(f.xi_part)}};
}

inline Json to_json(const XiPolynomial& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs) arr.push_back(to_string(c));
    return arr;
}

inline Json to_json(const IntFactorization& f) {
    return Json{{"factored", f.str()}, {"value", f.value().get_str()}};
}

inline Json to_json(const GramReport& r) {
    Json j;
    j["family"] = family_name(r.family);
    j["n"] = r.n;
    j["rank"] = r.rank;
    j["e_n"] = r.e_n.get_str();
    j["exact"] = r.exact;
    if (r.exact) j["det_poly"] = to_json(r.det_poly);
    j["det_numeric"] = to_json(r.det_numeric);
    j["d_n"] = to_json(r.d_n);
    j["d_n_estimated"] = r.d_n_estimated;
    j["proxy"] = to_json(r.proxy);
    j["log_d_per_e"] = to_json(r.log_d_per_e);
    j["product"] = to_json(r.product);
    j["threshold"] = to_json(r.threshold);
    return j;
}

inline Json to_json(const SmallForm& f) {
    Json j;
    Json c = Json::array();
    for (const auto& v : f.c) c.push_back(v.get_str());
    j["c"] = c;
    j["row"] = f.row;
    j["value"] = to_string(f.value.const_part) + " + " + to_string(f.value.xi_part) + "*zeta2";
    j["numeric"] = to_json(f.numeric);
    j["bound"] = to_json(f.bound);
    j["slack"] = f.slack;
    j["method"] = f.method;
    return j;
}

inline Json to_json(const FeketeResult& r) {
    Json j;
    j["log_abs_det"] = r.log_abs_det;
    j["proxy"] = r.proxy;
    j["iterations"] = r.iterations;
    j["restarts"] = r.restarts;
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(p);
    j["points"] = pts;
    return j;
}

inline Json to_json(const BoundValue& b) {
    return Json{{"value", to_json(b.value)}, {"derivation", b.derivation}};
}

inline Json to_json(const ModuleBasis& b) {
    Json j;
    j["family"] = b.tag;
    j["n"] = b.level;
    j["rank"] = b.rank();
    j["e_n"] = b.exponent_value.get_str();
    Json mono = Json::array();
    for (const auto& m : b.monomials) {
        Json entry;
        entry["exponents"] = m.exponents;
        if (m.coefficient != 1) entry["coefficient"] = m.coefficient.get_str();
        mono.push_back(entry);
    }
    j["monomials"] = mono;
    return j;
}

// CSV table row format shared by the CLI and the golden-file test.
inline std::string table_csv_header() {
    return "n,rank,e_n,det,d_n,proxy,log_d_per_e,product,threshold";
}

inline std::string table_csv_row(const GramReport& r) {
    std::ostringstream os;
    os << r.n << "," << r.rank << "," << r.e_n.get_str() << "," << r.det_numeric.str(6) << ","
       << r.d_n.str() << "," << r.proxy.str(6) << "," << r.log_d_per_e.str(6) << ","
       << r.product.str(6) << "," << r.threshold.str(6);
    return os.str();
}

// Contiguity memo checkpoint: one line per canonical exponent vector.
inline void save_mellin_cache(const std::string& path) {
    auto snap = mellin_table().snapshot();
    std::ofstream out(path + ".tmp", std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + path);
    for (const auto& [s, f] : snap) {
        for (long v : s) out << v << " ";
        out << to_string(f.const_part) << " " << to_string(f.xi_part) << "\n";
    }
    out.close();
    std::rename((path + ".tmp").c_str(), path.c_str());
}

inline void load_mellin_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;  // nothing cached yet
    std::map<Exp5, LinearForm> values;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        Exp5 s{};
        std::string cp, xp;
        for (long& v : s)
            if (!(is >> v)) continue;
        if (!(is >> cp >> xp)) continue;
        values.emplace(s, LinearForm{parse_rational(cp), parse_rational(xp)});
    }
    mellin_table().preload(values);
}

}  // namespace periodgram
