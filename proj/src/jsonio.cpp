#include "qmcert/jsonio.hpp"

#include <fstream>
#include <sstream>

namespace qmcert {

namespace {
const Int kMax53 = (Int(1) << 53) - 1;
}

Json json_int(const Int& v)
{
    if (abs(v) <= kMax53) return Json(static_cast<int64_t>(mpz_get_si(v.get_mpz_t())));
    return Json(v.get_str());
}

Int parse_int(const Json& j)
{
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<int64_t>()));
    if (j.is_string()) return int_from_string(j.get<std::string>());
    throw input_error("expected integer or decimal string, got: " + j.dump());
}

Json json_rat(const Rat& v)
{
    if (v.get_den() == 1) return json_int(Int(v.get_num()));
    return Json(Int(v.get_num()).get_str() + "/" + Int(v.get_den()).get_str());
}

Rat parse_rat(const Json& j)
{
    if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<int64_t>())));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(int_from_string(s));
        Int num = int_from_string(s.substr(0, slash));
        Int den = int_from_string(s.substr(slash + 1));
        if (sign(den) == 0) throw input_error("rational with zero denominator: " + s);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    throw input_error("expected rational (int or \"num/den\"), got: " + j.dump());
}

Json json_int_array(const std::vector<Int>& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(json_int(x));
    return a;
}

std::vector<Int> parse_int_array(const Json& j)
{
    if (!j.is_array()) throw input_error("expected array of integers");
    std::vector<Int> out;
    for (const auto& e : j) out.push_back(parse_int(e));
    return out;
}

std::vector<Rat> parse_rat_array(const Json& j)
{
    if (!j.is_array()) throw input_error("expected array of rationals");
    std::vector<Rat> out;
    for (const auto& e : j) out.push_back(parse_rat(e));
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + path);
    out << data;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qmcert
