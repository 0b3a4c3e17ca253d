#include "qmcert/fieldspec.hpp"

#include "qmcert/jsonio.hpp"
#include "qmcert/sha256.hpp"

namespace qmcert {

namespace {

std::vector<std::vector<Rat>> parse_rat_matrix(const Json& j, const std::string& key)
{
    if (!j.is_array()) throw input_error("key '" + key + "': expected array of arrays");
    std::vector<std::vector<Rat>> out;
    for (const auto& row : j) out.push_back(parse_rat_array(row));
    return out;
}

}  // namespace

FieldSpecData parse_field_spec(const std::string& json_text, const std::string& source_path)
{
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error("field spec parse error in " +
                          (source_path.empty() ? std::string("<input>") : source_path) + ": " +
                          e.what());
    }
    if (!j.is_object()) throw input_error("field spec must be a JSON object");

    FieldSpecData d;
    d.source_path = source_path;
    d.source_sha256 = sha256_hex(json_text);
    try {
        if (j.contains("name")) d.name = j.at("name").get<std::string>();
        if (!j.contains("defining_poly"))
            throw input_error("missing required key 'defining_poly'");
        d.defining_poly = IntPolynomial(parse_int_array(j.at("defining_poly")));

        if (j.contains("integral_basis"))
            d.integral_basis = parse_rat_matrix(j.at("integral_basis"), "integral_basis");

        if (!j.contains("automorphisms"))
            throw input_error("missing required key 'automorphisms'");
        for (const auto& a : j.at("automorphisms")) d.automorphisms.push_back(parse_rat_array(a));

        if (j.contains("class_number")) d.class_number = parse_int(j.at("class_number"));

        if (j.contains("class_generators")) {
            for (const auto& g : j.at("class_generators")) {
                FieldSpecData::ClassGen cg;
                cg.q = parse_int(g.at("q"));
                cg.root = parse_int(g.at("root"));
                cg.alpha = parse_rat_array(g.at("alpha_coordinates"));
                d.class_generators.push_back(std::move(cg));
            }
        }

        if (j.contains("quadratic_subfields")) {
            for (const auto& s : j.at("quadratic_subfields")) {
                FieldSpecData::QuadSub qs;
                qs.m = parse_int(s.at("m"));
                qs.witness = parse_rat_array(s.at("witness_coordinates"));
                d.quadratic_subfields.push_back(std::move(qs));
            }
        }

        if (j.contains("prime_factorizations")) {
            for (const auto& pf : j.at("prime_factorizations")) {
                FieldSpecData::PrimeFactorization p;
                p.p = parse_int(pf.at("p"));
                for (const auto& fct : pf.at("factors")) {
                    FieldSpecData::ClaimedFactor cf;
                    cf.generators = parse_rat_matrix(fct.at("generators"), "generators");
                    cf.e = fct.at("e").get<unsigned>();
                    p.factors.push_back(std::move(cf));
                }
                d.prime_factorizations.push_back(std::move(p));
            }
        }

        if (j.contains("assume_maximal")) d.assume_maximal = j.at("assume_maximal").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error("field spec " +
                          (source_path.empty() ? std::string("<input>") : source_path) +
                          ": " + e.what());
    }
    return d;
}

FieldSpecData load_field_spec(const std::string& path)
{
    return parse_field_spec(read_file(path), path);
}

}  // namespace qmcert
