#include "splitk/json_io.hpp"

#include <sstream>

namespace splitk {

namespace {
constexpr int kSchemaVersion = 1;
}

Json int_to_json(const Int& v) {
    if (v.fits_int64()) return Json(v.small_value());
    return Json(v.to_string());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    return Int::from_string(j.get<std::string>());
}

Json ring_element_to_json(const RingElement& a) {
    Json terms = Json::array();
    for (const auto& [label, coeff] : a.terms()) {
        Json t;
        t["left"] = label.left.to_string();
        t["right"] = label.right.to_string();
        t["coeff"] = int_to_json(coeff);
        if (label.left.is_opaque()) t["left_dim"] = label.left.dimension(a.ell());
        if (label.right.is_opaque()) t["right_dim"] = label.right.dimension(a.ell());
        terms.push_back(std::move(t));
    }
    return Json{{"ell", a.ell()}, {"terms", std::move(terms)}};
}

RingElement ring_element_from_json(const Json& j) {
    RingElement a(j.at("ell").get<long>());
    for (const auto& t : j.at("terms")) {
        HLabel left = HLabel::parse(t.at("left").get<std::string>(),
                                    t.contains("left_dim") ? t["left_dim"].get<long>() : 0);
        HLabel right = HLabel::parse(t.at("right").get<std::string>(),
                                     t.contains("right_dim") ? t["right_dim"].get<long>() : 0);
        a.add_term(BoxLabel{left, right}, int_from_json(t.at("coeff")));
    }
    return a;
}

// A series is the JSON array of its coefficients; the order is the length.
Json series_to_json(const TruncatedSeries& s) {
    Json coeffs = Json::array();
    for (long n = 0; n <= s.order(); ++n) coeffs.push_back(ring_element_to_json(s[n]));
    return coeffs;
}

std::string series_to_csv(const TruncatedSeries& s) {
    std::ostringstream os;
    os << "degree,label,coefficient\n";
    for (long n = 0; n <= s.order(); ++n)
        for (const auto& [label, coeff] : s[n].terms())
            os << n << "," << label.left.to_string() << "#" << label.right.to_string() << ","
               << coeff.to_string() << "\n";
    return os.str();
}

Json decomposition_report_to_json(const DecompositionReport& report) {
    Json summands = Json::array();
    for (const auto& e : report.entries) {
        Json s;
        if (std::holds_alternative<HLabel>(e.label)) {
            s["label"] = std::get<HLabel>(e.label).to_string();
        } else {
            const BoxLabel& b = std::get<BoxLabel>(e.label);
            s["label"] = Json{{"left", b.left.to_string()}, {"right", b.right.to_string()}};
        }
        s["multiplicity"] = e.multiplicity;
        s["dim"] = e.dim;
        s["dim_end"] = e.dim_end;
        s["dim_rad"] = e.dim_rad;
        summands.push_back(std::move(s));
    }
    return Json{{"schema_version", kSchemaVersion},
                {"ell", report.ell},
                {"group", group_name(report.group)},
                {"input_dim", report.input_dim},
                {"summands", std::move(summands)}};
}

Json witness_report_to_json(const WitnessReport& report) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["ell"] = report.ell;
    j["assumptions"] = report.assumptions;
    j["a_ell_forced"] = ring_element_to_json(report.a.back());
    j["b_ell"] = ring_element_to_json(report.b_ell);
    j["b_ell_mod_filtration"] = ring_element_to_json(report.b_ell_reduced);
    j["coeff_w_box_w"] = int_to_json(report.coeff_ww);
    j["coeff_w_box_v"] = int_to_json(report.coeff_w_v);
    j["coeff_v_box_w"] = int_to_json(report.coeff_v_w);
    j["effective"] = report.effective;
    return j;
}

std::string witness_report_to_csv(const WitnessReport& report) {
    std::ostringstream os;
    os << "field,value\n";
    os << "ell," << report.ell << "\n";
    os << "coeff_w_box_w," << report.coeff_ww.to_string() << "\n";
    os << "coeff_w_box_v," << report.coeff_w_v.to_string() << "\n";
    os << "coeff_v_box_w," << report.coeff_v_w.to_string() << "\n";
    os << "effective," << (report.effective ? "true" : "false") << "\n";
    os << "degree,label,coefficient\n";
    for (const auto& [label, coeff] : report.b_ell.terms())
        os << report.ell << "," << label.to_string() << "," << coeff.to_string() << "\n";
    return os.str();
}

Json cross_check_report_to_json(const CrossCheckReport& report) {
    return Json{{"schema_version", kSchemaVersion},
                {"ell", report.ell},
                {"note",
                 "actual = oracle decomposition of the degree-l quotient-model symmetric "
                 "power of the box class; forced = the recurrence coefficient. These are "
                 "different objects and are reported side by side."},
                {"actual", ring_element_to_json(report.actual)},
                {"forced", ring_element_to_json(report.forced)},
                {"difference", ring_element_to_json(report.difference)},
                {"actual_dim", int_to_json(report.actual_dim)},
                {"forced_dim", int_to_json(report.forced_dim)}};
}

Json cell_report_to_json(const CellReport& report) {
    Json cells = Json::array();
    for (const auto& c : report.cells)
        cells.push_back(Json{{"beta", c.beta.to_string()},
                             {"lambda", c.lambda.to_string()},
                             {"parameter_count", c.param_count},
                             {"ideal_count", c.ideal_count}});
    return Json{{"schema_version", kSchemaVersion},
                {"n", report.n},
                {"q", report.q},
                {"cells", std::move(cells)},
                {"total", report.total}};
}

std::string cell_report_to_csv(const CellReport& report) {
    std::ostringstream os;
    os << "beta,lambda,parameter_count,ideal_count\n";
    for (const auto& c : report.cells)
        os << c.beta.to_string() << "," << c.lambda.to_string() << "," << c.param_count << ","
           << c.ideal_count << "\n";
    return os.str();
}

}  // namespace splitk
