#include "flexcert/json_io.hpp"

#include "flexcert/errors.hpp"

#include <fstream>
#include <sstream>

namespace flexcert {

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": malformed JSON: " + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw InputError("field " + path + ": " + what);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) field_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) field_error(path + "." + key, "missing");
    return *it;
}

const Json& array_member(const Json& obj, const std::string& key, const std::string& path) {
    const Json& a = member(obj, key, path);
    if (!a.is_array()) field_error(path + "." + key, "expected an array");
    return a;
}

Scalar scalar_from(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Scalar(j.dump());
    if (!j.is_string()) field_error(path, "expected a rational string such as \"3/4\"");
    try {
        return parse_scalar(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        field_error(path, e.what());
    }
}

std::size_t index_from(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned()) field_error(path, "expected a nonnegative integer index");
    return j.get<std::size_t>();
}

std::string string_from(const Json& j, const std::string& path) {
    if (!j.is_string()) field_error(path, "expected a string");
    return j.get<std::string>();
}

Vector vector_from(const Json& j, const std::string& path) {
    if (!j.is_array()) field_error(path, "expected an array of rationals");
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

std::vector<std::string> names_from(const Json& j, const std::string& path) {
    const Json& a = array_member(j, "variables", path);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) names.push_back(string_from(a[i], path + ".variables[" + std::to_string(i) + "]"));
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size()) field_error(path + ".variables", "duplicate variable name");
    return names;
}

std::optional<Vector> base_point_from(const Json& j, std::size_t m) {
    if (!j.contains("base_point")) return std::nullopt;
    Vector v = vector_from(j["base_point"], "$.base_point");
    if (v.size() != m)
        field_error("$.base_point", "has " + std::to_string(v.size()) + " entries, expected " + std::to_string(m));
    return v;
}

}  // namespace

bool is_general_system(const Json& j) {
    if (!j.is_object() || !j.contains("equations") || !j["equations"].is_array()) return false;
    for (const auto& eq : j["equations"])
        if (eq.is_object() && eq.contains("terms")) return true;
    return false;
}

SystemInput parse_system(const Json& j) {
    auto names = names_from(j, "$");
    const std::size_t m = names.size();
    const Json& eqs = array_member(j, "equations", "$");
    RawQuadraticSystem raw{names, {}};
    for (std::size_t k = 0; k < eqs.size(); ++k) {
        const std::string path = "$.equations[" + std::to_string(k) + "]";
        const Json& e = eqs[k];
        if (!e.is_object()) field_error(path, "expected an object");
        RawEquation eq;
        if (e.contains("alpha")) {
            const Json& a = array_member(e, "alpha", path);
            for (std::size_t t = 0; t < a.size(); ++t) {
                const std::string tp = path + ".alpha[" + std::to_string(t) + "]";
                if (!a[t].is_array() || a[t].size() != 3) field_error(tp, "expected [i, j, coefficient]");
                std::size_t i = index_from(a[t][0], tp + "[0]");
                std::size_t jj = index_from(a[t][1], tp + "[1]");
                if (i >= m || jj >= m) field_error(tp, "variable index out of range (indices are 0-based)");
                eq.alpha.push_back({i, jj, scalar_from(a[t][2], tp + "[2]")});
            }
        }
        if (e.contains("beta")) {
            const Json& b = array_member(e, "beta", path);
            for (std::size_t t = 0; t < b.size(); ++t) {
                const std::string tp = path + ".beta[" + std::to_string(t) + "]";
                if (!b[t].is_array() || b[t].size() != 2) field_error(tp, "expected [i, coefficient]");
                std::size_t i = index_from(b[t][0], tp + "[0]");
                if (i >= m) field_error(tp, "variable index out of range (indices are 0-based)");
                eq.beta.push_back({i, scalar_from(b[t][1], tp + "[1]")});
            }
        }
        if (e.contains("gamma")) eq.gamma = scalar_from(e["gamma"], path + ".gamma");
        raw.equations.push_back(std::move(eq));
    }
    if (raw.equations.empty()) field_error("$.equations", "must not be empty");
    return {validate_and_symmetrize(raw), base_point_from(j, m)};
}

GeneralInput parse_general_system(const Json& j) {
    auto names = names_from(j, "$");
    const std::size_t m = names.size();
    const Json& eqs = array_member(j, "equations", "$");
    GeneralPolySystem sys{names, {}};
    for (std::size_t k = 0; k < eqs.size(); ++k) {
        const std::string path = "$.equations[" + std::to_string(k) + "]";
        const Json& terms = array_member(eqs[k], "terms", path);
        Polynomial p;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string tp = path + ".terms[" + std::to_string(t) + "]";
            const Json& ex = array_member(terms[t], "exponents", tp);
            if (ex.size() != m) field_error(tp + ".exponents", "expected " + std::to_string(m) + " exponents");
            Exponents e;
            for (std::size_t i = 0; i < m; ++i)
                e.push_back(static_cast<unsigned>(index_from(ex[i], tp + ".exponents[" + std::to_string(i) + "]")));
            p[e] += scalar_from(member(terms[t], "coeff", tp), tp + ".coeff");
            if (sgn(p[e]) == 0) p.erase(e);
        }
        sys.equations.push_back(std::move(p));
    }
    if (sys.equations.empty()) field_error("$.equations", "must not be empty");
    return {sys, base_point_from(j, m)};
}

Framework parse_framework(const Json& j) {
    Framework fw;
    const Json& dim = member(j, "dimension", "$");
    fw.dimension = index_from(dim, "$.dimension");
    if (fw.dimension == 0) field_error("$.dimension", "must be positive");
    const Json& joints = array_member(j, "joints", "$");
    for (std::size_t i = 0; i < joints.size(); ++i) {
        const std::string path = "$.joints[" + std::to_string(i) + "]";
        Joint joint{string_from(member(joints[i], "id", path), path + ".id"),
                    vector_from(member(joints[i], "coords", path), path + ".coords")};
        if (joint.coords.size() != fw.dimension)
            field_error(path + ".coords", "expected " + std::to_string(fw.dimension) + " coordinates");
        if (fw.joint_index(joint.id)) field_error(path + ".id", "duplicate joint id \"" + joint.id + "\"");
        fw.joints.push_back(std::move(joint));
    }
    auto lookup = [&](const Json& id, const std::string& path) {
        std::string name = string_from(id, path);
        auto idx = fw.joint_index(name);
        if (!idx) field_error(path, "unknown joint \"" + name + "\"");
        return *idx;
    };
    const Json& bars = array_member(j, "bars", "$");
    if (bars.empty()) field_error("$.bars", "must not be empty (a framework needs at least one bar)");
    for (std::size_t b = 0; b < bars.size(); ++b) {
        const std::string path = "$.bars[" + std::to_string(b) + "]";
        if (!bars[b].is_array() || bars[b].size() != 2) field_error(path, "expected [\"a\", \"b\"]");
        fw.bars.emplace_back(lookup(bars[b][0], path + "[0]"), lookup(bars[b][1], path + "[1]"));
    }
    if (j.contains("pins")) {
        const Json& pins = array_member(j, "pins", "$");
        for (std::size_t p = 0; p < pins.size(); ++p) {
            const std::string path = "$.pins[" + std::to_string(p) + "]";
            std::size_t joint = lookup(member(pins[p], "joint", path), path + ".joint");
            const Json& coords = array_member(pins[p], "coords", path);
            for (std::size_t c = 0; c < coords.size(); ++c) {
                std::size_t axis = index_from(coords[c], path + ".coords[" + std::to_string(c) + "]");
                if (axis >= fw.dimension) field_error(path + ".coords", "coordinate index out of range (0-based)");
                fw.pins.insert({joint, axis});
            }
        }
    }
    if (j.contains("auto_pin")) {
        if (!j["auto_pin"].is_boolean()) field_error("$.auto_pin", "expected a boolean");
        fw.auto_pin = j["auto_pin"].get<bool>();
    }
    try {
        validate_framework(fw);
    } catch (const UsageError& e) {
        throw InputError(std::string("invalid framework: ") + e.what());
    }
    return fw;
}

Json scalar_to_json(const Scalar& x) { return format_scalar(x); }

Json vector_to_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(format_scalar(x));
    return a;
}

namespace {

Json vectors_to_json(const std::vector<Vector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(vector_to_json(v));
    return a;
}

Json matrix_to_json(const Matrix& m) {
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_to_json(m.row(r)));
    return a;
}

std::vector<Vector> vectors_from(const Json& j, const std::string& path) {
    if (!j.is_array()) field_error(path, "expected an array of vectors");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix matrix_from(const Json& j, const std::string& path) {
    auto rows = vectors_from(j, path);
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    try {
        return Matrix::from_rows(rows, cols);
    } catch (const UsageError&) {
        field_error(path, "ragged matrix");
    }
}

Json names_json(const std::vector<std::string>& names) {
    Json a = Json::array();
    for (const auto& n : names) a.push_back(n);
    return a;
}

}  // namespace

Json system_to_json(const QuadraticSystem& sys, const std::optional<Vector>& base_point) {
    Json j;
    j["variables"] = names_json(sys.variable_names());
    Json eqs = Json::array();
    for (std::size_t k = 0; k < sys.equation_count(); ++k) {
        Json alpha = Json::array();
        for (const auto& t : sys.quadratic_terms(k))
            alpha.push_back(Json::array({t.i, t.j, format_scalar(t.i == t.j ? t.value : 2 * t.value)}));
        Json beta = Json::array();
        for (std::size_t i = 0; i < sys.variable_count(); ++i)
            if (sgn(sys.beta(k)[i]) != 0) beta.push_back(Json::array({i, format_scalar(sys.beta(k)[i])}));
        Json eq;
        eq["alpha"] = alpha;
        eq["beta"] = beta;
        eq["gamma"] = format_scalar(sys.gamma(k));
        eqs.push_back(eq);
    }
    j["equations"] = eqs;
    if (base_point) j["base_point"] = vector_to_json(*base_point);
    return j;
}

Json general_to_json(const GeneralPolySystem& sys, const std::optional<Vector>& base_point) {
    Json j;
    j["variables"] = names_json(sys.variable_names);
    Json eqs = Json::array();
    for (const auto& p : sys.equations) {
        Json terms = Json::array();
        for (const auto& [e, c] : p) {
            Json t;
            t["exponents"] = e;
            t["coeff"] = format_scalar(c);
            terms.push_back(t);
        }
        Json eq;
        eq["terms"] = terms;
        eqs.push_back(eq);
    }
    j["equations"] = eqs;
    if (base_point) j["base_point"] = vector_to_json(*base_point);
    return j;
}

Json framework_to_json(const Framework& fw) {
    Json j;
    j["dimension"] = fw.dimension;
    Json joints = Json::array();
    for (const auto& joint : fw.joints) {
        Json o;
        o["id"] = joint.id;
        o["coords"] = vector_to_json(joint.coords);
        joints.push_back(o);
    }
    j["joints"] = joints;
    Json bars = Json::array();
    for (const auto& [a, b] : fw.bars) bars.push_back(Json::array({fw.joints[a].id, fw.joints[b].id}));
    j["bars"] = bars;
    Json pins = Json::array();
    for (std::size_t joint = 0; joint < fw.joints.size(); ++joint) {
        Json coords = Json::array();
        for (std::size_t c = 0; c < fw.dimension; ++c)
            if (fw.pins.count({joint, c})) coords.push_back(c);
        if (coords.empty()) continue;
        Json o;
        o["joint"] = fw.joints[joint].id;
        o["coords"] = coords;
        pins.push_back(o);
    }
    j["pins"] = pins;
    j["auto_pin"] = fw.auto_pin;
    return j;
}

Json reduction_to_json(const Reduction& r, const std::optional<Vector>& base_point) {
    std::optional<Vector> lifted;
    if (base_point) lifted = lift_base_point(r.map, *base_point);
    Json j = system_to_json(r.system, lifted);
    Json defs = Json::array();
    for (const auto& d : r.map.definitions) {
        Json o;
        o["variable"] = r.system.variable_names()[d.variable];
        o["monomial"] = d.monomial;
        defs.push_back(o);
    }
    Json map;
    map["original_variable_count"] = r.map.original_variable_count;
    map["definitions"] = defs;
    j["reduction"] = map;
    return j;
}

Json series_to_json(const Series& s) {
    Json j;
    j["degree"] = s.degree();
    j["coefficients"] = vectors_to_json(s.coefficients());
    return j;
}

Series series_from_json(const Json& j) {
    auto coeffs = vectors_from(member(j, "coefficients", "series"), "series.coefficients");
    if (coeffs.empty()) field_error("series.coefficients", "must not be empty");
    try {
        return Series(std::move(coeffs));
    } catch (const UsageError& e) {
        field_error("series.coefficients", e.what());
    }
}

Json certificate_to_json(const Certificate& c) {
    Json j;
    j["kind"] = certificate_kind(c);
    if (const auto* f = std::get_if<FirstOrderRigid>(&c)) {
        j["rank"] = f->rank;
    } else if (const auto* o = std::get_if<SecondOrderObstruction>(&c)) {
        j["reason"] = reason_name(o->reason);
        j["kernel"] = vectors_to_json(o->kernel);
        j["cokernel"] = vectors_to_json(o->cokernel);
        Json forms = Json::array();
        for (const auto& g : o->forms) forms.push_back(matrix_to_json(g));
        j["forms"] = forms;
        j["form"] = o->form_index + 1;
    } else if (const auto* s = std::get_if<SpanClosureFlex>(&c)) {
        j["q"] = s->q;
        j["k"] = s->k;
        j["series"] = series_to_json(s->series);
        Json pairs = Json::array();
        for (const auto& p : s->pairs) {
            Json o;
            o["i"] = p.i;
            o["j"] = p.j;
            Json coeffs = Json::array();
            for (const auto& x : p.coefficients) coeffs.push_back(format_scalar(x));
            o["coefficients"] = coeffs;
            o["value"] = vector_to_json(p.value);
            pairs.push_back(o);
        }
        j["pairs"] = pairs;
        Json cross = Json::array();
        for (const auto& t : s->cross_terms) {
            Json o;
            o["order"] = t.order;
            Json coeffs = Json::array();
            for (const auto& x : t.coefficients) coeffs.push_back(format_scalar(x));
            o["coefficients"] = coeffs;
            o["value"] = vector_to_json(t.value);
            cross.push_back(o);
        }
        j["cross_terms"] = cross;
    } else if (const auto* t = std::get_if<TStandardFail>(&c)) {
        j["p"] = t->p;
        j["rhs"] = vector_to_json(t->rhs);
        j["t_basis"] = vectors_to_json(t->t_basis);
        j["prefix"] = series_to_json(t->prefix);
    } else if (const auto* t = std::get_if<TStandardSurvived>(&c)) {
        j["depth"] = t->depth;
        j["t_basis"] = vectors_to_json(t->t_basis);
        j["series"] = series_to_json(t->series);
    }
    return j;
}

Certificate certificate_from_json(const Json& j) {
    const std::string kind = string_from(member(j, "kind", "certificate"), "certificate.kind");
    auto count = [&](const char* key) { return index_from(member(j, key, "certificate"), std::string("certificate.") + key); };
    if (kind == "FirstOrderRigid") return FirstOrderRigid{count("rank")};
    if (kind == "SecondOrderObstruction") {
        SecondOrderObstruction o;
        const std::string reason = string_from(member(j, "reason", "certificate"), "certificate.reason");
        using R = SecondOrderObstruction::Reason;
        bool known = false;
        for (R r : {R::TrivialKernel, R::NonzeroForm, R::DefiniteForm, R::NoCommonZero})
            if (reason_name(r) == reason) {
                o.reason = r;
                known = true;
            }
        if (!known) field_error("certificate.reason", "unknown reason \"" + reason + "\"");
        o.kernel = vectors_from(member(j, "kernel", "certificate"), "certificate.kernel");
        o.cokernel = vectors_from(member(j, "cokernel", "certificate"), "certificate.cokernel");
        const Json& forms = array_member(j, "forms", "certificate");
        for (std::size_t l = 0; l < forms.size(); ++l)
            o.forms.push_back(matrix_from(forms[l], "certificate.forms[" + std::to_string(l) + "]"));
        std::size_t form = count("form");
        if (form == 0) field_error("certificate.form", "indices in reports are 1-based");
        o.form_index = form - 1;
        return o;
    }
    if (kind == "SpanClosureFlex") {
        SpanClosureFlex s{count("q"), count("k"), series_from_json(member(j, "series", "certificate")), {}, {}};
        const Json& pairs = array_member(j, "pairs", "certificate");
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const std::string path = "certificate.pairs[" + std::to_string(p) + "]";
            SpanPair pair;
            pair.i = index_from(member(pairs[p], "i", path), path + ".i");
            pair.j = index_from(member(pairs[p], "j", path), path + ".j");
            pair.coefficients = vector_from(member(pairs[p], "coefficients", path), path + ".coefficients").entries();
            pair.value = vector_from(member(pairs[p], "value", path), path + ".value");
            s.pairs.push_back(std::move(pair));
        }
        if (j.contains("cross_terms")) {
            const Json& cross = array_member(j, "cross_terms", "certificate");
            for (std::size_t t = 0; t < cross.size(); ++t) {
                const std::string path = "certificate.cross_terms[" + std::to_string(t) + "]";
                SpanCrossTerm term;
                term.order = index_from(member(cross[t], "order", path), path + ".order");
                term.coefficients = vector_from(member(cross[t], "coefficients", path), path + ".coefficients").entries();
                term.value = vector_from(member(cross[t], "value", path), path + ".value");
                s.cross_terms.push_back(std::move(term));
            }
        }
        return s;
    }
    if (kind == "TStandardFail")
        return TStandardFail{count("p"), vector_from(member(j, "rhs", "certificate"), "certificate.rhs"),
                             vectors_from(member(j, "t_basis", "certificate"), "certificate.t_basis"),
                             series_from_json(member(j, "prefix", "certificate"))};
    if (kind == "TStandardSurvived")
        return TStandardSurvived{count("depth"), vectors_from(member(j, "t_basis", "certificate"), "certificate.t_basis"),
                                 series_from_json(member(j, "series", "certificate"))};
    field_error("certificate.kind", "unknown kind \"" + kind + "\"");
}

Json report_to_json(const AnalysisReport& r) {
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    j["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
    j["depth"] = r.depth_reached;
    j["notes"] = r.notes;
    j["kernel_dimension"] = r.kernel_dimension;
    j["config"] = Json{{"q_max", r.config.q_max}, {"max_depth", r.config.max_depth}};
    Json supporting = Json::array();
    for (const auto& c : r.supporting) supporting.push_back(certificate_to_json(c));
    j["supporting"] = supporting;
    return j;
}

Json framework_report_to_json(const FrameworkReport& r) {
    Json j = report_to_json(r.analysis);
    Json fw;
    fw["basis"] = r.basis;
    fw["variables"] = names_json(r.edges.system.variable_names());
    fw["base_point"] = vector_to_json(r.edges.base_point);
    fw["gauge_equations"] = r.gauge_equations;
    Json pins = Json::array();
    for (const auto& [joint, axis] : r.pinned.pins)
        pins.push_back(Json{{"joint", r.pinned.joints[joint].id}, {"axis", axis}});
    fw["pins"] = pins;
    if (r.flexion) {
        Json flex;
        flex["order"] = r.flexion->order;
        flex["nontrivial"] = r.flexion->nontrivial;
        if (r.flexion->witness) {
            const auto& w = *r.flexion->witness;
            flex["witness"] = Json{{"joints", Json::array({r.pinned.joints[w.a].id, r.pinned.joints[w.b].id})},
                                   {"order", w.order},
                                   {"coefficient", format_scalar(w.coefficient)}};
        } else {
            flex["witness"] = nullptr;
        }
        fw["flexion"] = flex;
    } else {
        fw["flexion"] = nullptr;
    }
    j["framework"] = fw;
    return j;
}

}  // namespace flexcert
