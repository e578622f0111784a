#include "cover/scenario.hpp"

#include "cover/congruence.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace cover {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& s : issues) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> iss)
    : std::runtime_error("schema error: " + join_issues(iss)), issues(std::move(iss)) {}

SemanticError::SemanticError(std::vector<std::string> iss)
    : std::runtime_error("semantic error: " + join_issues(iss)), issues(std::move(iss)) {}

namespace {

// ------------------------------------------------------------------
// JSON <-> Int helpers. Values are emitted as JSON numbers while they
// fit in 64 bits and as decimal strings beyond that; both forms are
// accepted on input.
// ------------------------------------------------------------------

json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

bool json_to_int(const json& j, Int& out) {
    if (j.is_number_integer()) {
        out = Int(j.get<std::int64_t>());
        return true;
    }
    if (j.is_string()) {
        try {
            out = Int(j.get<std::string>());
            return true;
        } catch (...) {
            return false;
        }
    }
    return false;
}

json vec_to_json(const std::vector<Int>& v) {
    json arr = json::array();
    for (const Int& x : v) arr.push_back(int_to_json(x));
    return arr;
}

json matrix_to_json(const IntMatrix& m) {
    json arr = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(vec_to_json(m.row(i)));
    return arr;
}

json group_to_json(const FgAbGroup& g) {
    json out;
    out["invariants"] = vec_to_json(g.invariants);
    out["free_rank"] = g.free_rank;
    return out;
}

// ------------------------------------------------------------------
// Schema readers: collect issues with field paths instead of throwing
// one at a time.
// ------------------------------------------------------------------

struct Reader {
    std::vector<std::string> schema_issues;
    std::vector<std::string> semantic_issues;

    bool require(bool cond, const std::string& path, const std::string& what) {
        if (!cond) schema_issues.push_back(path + ": " + what);
        return cond;
    }

    std::optional<Int> read_int(const json& j, const std::string& path) {
        Int v;
        if (!json_to_int(j, v)) {
            schema_issues.push_back(path + ": expected an integer");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::vector<Int>> read_vec(const json& j, const std::string& path) {
        if (!j.is_array()) {
            schema_issues.push_back(path + ": expected an array of integers");
            return std::nullopt;
        }
        std::vector<Int> out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto v = read_int(j[i], path + "[" + std::to_string(i) + "]");
            if (!v) return std::nullopt;
            out.push_back(*v);
        }
        return out;
    }

    std::optional<IntMatrix> read_matrix(const json& j, const std::string& path) {
        if (!j.is_array()) {
            schema_issues.push_back(path + ": expected a matrix (array of rows)");
            return std::nullopt;
        }
        std::vector<std::vector<Int>> rows;
        for (std::size_t i = 0; i < j.size(); ++i) {
            auto r = read_vec(j[i], path + "[" + std::to_string(i) + "]");
            if (!r) return std::nullopt;
            if (!rows.empty() && r->size() != rows.front().size()) {
                schema_issues.push_back(path + ": ragged rows");
                return std::nullopt;
            }
            rows.push_back(std::move(*r));
        }
        if (rows.empty()) return IntMatrix(0, 0);
        return IntMatrix::from_rows(rows);
    }
};

struct ParsedGroup {
    FgAbGroup group;           // canonical
    Homomorphism to_canonical; // Z^{original gens} -> group
    std::size_t original_dim = 0;
};

std::optional<ParsedGroup> read_group(Reader& rd, const json& j, const std::string& path) {
    if (!j.is_object()) {
        rd.schema_issues.push_back(path + ": expected an object");
        return std::nullopt;
    }
    if (j.contains("invariants")) {
        auto inv = rd.read_vec(j["invariants"], path + ".invariants");
        if (!inv) return std::nullopt;
        std::size_t free_rank = 0;
        if (j.contains("free_rank")) {
            auto fr = rd.read_int(j["free_rank"], path + ".free_rank");
            if (!fr) return std::nullopt;
            if (*fr < 0) {
                rd.schema_issues.push_back(path + ".free_rank: must be >= 0");
                return std::nullopt;
            }
            free_rank = static_cast<std::size_t>(*fr);
        }
        FgAbGroup g;
        try {
            g = make_group(*inv, free_rank);
        } catch (const std::exception& e) {
            rd.semantic_issues.push_back(path + ".invariants: " + e.what());
            return std::nullopt;
        }
        return ParsedGroup{g, identity_hom(g), g.dim()};
    }
    if (j.contains("generators")) {
        auto n = rd.read_int(j["generators"], path + ".generators");
        if (!n) return std::nullopt;
        if (*n < 0) {
            rd.schema_issues.push_back(path + ".generators: must be >= 0");
            return std::nullopt;
        }
        IntMatrix rel(0, 0);
        if (j.contains("relations")) {
            auto m = rd.read_matrix(j["relations"], path + ".relations");
            if (!m) return std::nullopt;
            rel = std::move(*m);
        }
        std::size_t gens = static_cast<std::size_t>(*n);
        if (rel.rows() > 0 && rel.cols() != gens) {
            rd.schema_issues.push_back(path + ".relations: rows must have length " +
                                       std::to_string(gens));
            return std::nullopt;
        }
        CanonicalizeResult c = canonicalize(rel, gens);
        return ParsedGroup{c.group, c.to_canonical, gens};
    }
    rd.schema_issues.push_back(path + ": needs either \"invariants\" or \"generators\"");
    return std::nullopt;
}

}  // namespace

Scenario parse_input(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        throw SchemaError({std::string("document is not valid JSON: ") + e.what()});
    }
    return parse_input(j);
}

Scenario parse_input(const json& j) {
    Reader rd;
    if (!j.is_object()) throw SchemaError({"document root must be an object"});

    for (const char* key : {"group", "branch", "char_generators", "picard", "h2", "c1", "rho_image"})
        rd.require(j.contains(key), key, "missing required key");
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);

    Scenario sc;

    // --- Galois group ---------------------------------------------------
    auto pg = read_group(rd, j["group"], "group");
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    if (!rd.semantic_issues.empty()) throw SemanticError(rd.semantic_issues);
    sc.bd.G = pg->group;

    // --- branches --------------------------------------------------------
    const json& branch = j["branch"];
    if (!branch.is_array()) throw SchemaError({"branch: expected an array"});
    for (std::size_t idx = 0; idx < branch.size(); ++idx) {
        const std::string path = "branch[" + std::to_string(idx) + "]";
        const json& b = branch[idx];
        if (!rd.require(b.is_object() && b.contains("m") && b.contains("g"), path,
                        "expected an object with keys m and g"))
            continue;
        auto m = rd.read_int(b["m"], path + ".m");
        auto g = rd.read_vec(b["g"], path + ".g");
        if (!m || !g) continue;
        if (*m < 1) {
            rd.schema_issues.push_back(path + ".m: must be >= 1");
            continue;
        }
        if (g->size() != pg->original_dim) {
            rd.schema_issues.push_back(path + ".g: expected " + std::to_string(pg->original_dim) +
                                       " coordinates");
            continue;
        }
        sc.bd.m.push_back(*m);
        sc.bd.g.emplace_back(sc.bd.G, pg->to_canonical.matrix.apply(*g));
    }
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    const std::size_t k = sc.bd.branch_count();

    // --- character generators --------------------------------------------
    const json& chars = j["char_generators"];
    if (!chars.is_array()) throw SchemaError({"char_generators: expected an array"});
    for (std::size_t idx = 0; idx < chars.size(); ++idx) {
        const std::string path = "char_generators[" + std::to_string(idx) + "]";
        const json& c = chars[idx];
        if (!rd.require(c.is_object() && c.contains("a"), path, "expected an object with key a"))
            continue;
        auto a = rd.read_vec(c["a"], path + ".a");
        if (!a) continue;
        if (a->size() != k) {
            rd.schema_issues.push_back(path + ".a: expected " + std::to_string(k) + " components");
            continue;
        }
        for (std::size_t jj = 0; jj < k; ++jj)
            if ((*a)[jj] < 0 || (*a)[jj] >= sc.bd.m[jj])
                rd.semantic_issues.push_back(path + ".a[" + std::to_string(jj) +
                                             "]: component out of range [0, m_j)");
        if (!rd.semantic_issues.empty()) continue;
        auto chi = character_from_components(sc.bd, *a);
        if (!chi) {
            rd.semantic_issues.push_back(path + ": components do not define a character of G");
            continue;
        }
        sc.bd.chi.push_back(*chi);
        sc.bd.chi_order.push_back(chi->order());
    }
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    if (!rd.semantic_issues.empty()) throw SemanticError(rd.semantic_issues);

    {
        ValidationReport rep = validate_building_data(sc.bd);
        if (!rep.ok()) throw SemanticError(rep.problems);
    }

    // --- picard model -----------------------------------------------------
    const json& pj = j["picard"];
    if (!pj.is_object() || !pj.contains("group") || !pj.contains("D") || !pj.contains("L"))
        throw SchemaError({"picard: expected an object with keys group, D, L"});
    auto pa = read_group(rd, pj["group"], "picard.group");
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    if (!rd.semantic_issues.empty()) throw SemanticError(rd.semantic_issues);
    sc.pic.A = pa->group;
    auto read_elements = [&](const json& arr, const std::string& path, const ParsedGroup& grp,
                             std::vector<GroupElement>& out) {
        if (!arr.is_array()) {
            rd.schema_issues.push_back(path + ": expected an array of coordinate vectors");
            return;
        }
        for (std::size_t idx = 0; idx < arr.size(); ++idx) {
            auto v = rd.read_vec(arr[idx], path + "[" + std::to_string(idx) + "]");
            if (!v) continue;
            if (v->size() != grp.original_dim) {
                rd.schema_issues.push_back(path + "[" + std::to_string(idx) + "]: expected " +
                                           std::to_string(grp.original_dim) + " coordinates");
                continue;
            }
            out.emplace_back(grp.group, grp.to_canonical.matrix.apply(*v));
        }
    };
    read_elements(pj["D"], "picard.D", *pa, sc.pic.D);
    read_elements(pj["L"], "picard.L", *pa, sc.pic.Lgen);
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    if (sc.pic.D.size() != k)
        throw SchemaError({"picard.D: expected one class per branch (" + std::to_string(k) + ")"});
    if (sc.pic.Lgen.size() != sc.bd.chi.size())
        throw SchemaError({"picard.L: expected one class per character generator (" +
                           std::to_string(sc.bd.chi.size()) + ")"});
    {
        ValidationReport rep = validate_picard_model(sc.bd, sc.pic);
        if (!rep.ok()) throw SemanticError(rep.problems);
    }

    // --- cohomology model ---------------------------------------------------
    const json& hj = j["h2"];
    if (!hj.is_object() || !hj.contains("group"))
        throw SchemaError({"h2: expected an object with key group"});
    auto ph = read_group(rd, hj["group"], "h2.group");
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    if (!rd.semantic_issues.empty()) throw SemanticError(rd.semantic_issues);
    sc.coh.H2 = ph->group;

    auto c1 = rd.read_matrix(j["c1"], "c1");
    if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    if (c1->rows() != ph->original_dim || (c1->cols() != pa->original_dim && c1->rows() != 0))
        throw SchemaError({"c1: expected a " + std::to_string(ph->original_dim) + " x " +
                           std::to_string(pa->original_dim) + " matrix"});
    {
        // The original-coordinate matrix must kill the relation lattice of
        // the picard presentation, otherwise it does not descend to A.
        IntMatrix rel = tuple_relations(sc.pic.A.moduli(), pa->to_canonical.matrix);
        for (std::size_t r = 0; r < rel.rows(); ++r) {
            std::vector<Int> in_h2 = c1->apply(rel.row(r));
            GroupElement img(sc.coh.H2, ph->to_canonical.matrix.apply(in_h2));
            if (!img.is_zero())
                throw SemanticError({"c1: matrix does not descend to the picard group (a relation "
                                     "has nonzero Chern class)"});
        }
        IntMatrix sec = surjection_section(pa->to_canonical);
        IntMatrix canon = ph->to_canonical.matrix * (*c1) * sec;
        sc.coh.c1 = Homomorphism(sc.pic.A, sc.coh.H2, std::move(canon));
    }

    // --- rho image ------------------------------------------------------------
    const json& rj = j["rho_image"];
    if (rj.is_object() && rj.contains("divisible")) {
        auto delta = rd.read_vec(rj["divisible"], "rho_image.divisible");
        if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
        if (delta->size() != k)
            throw SchemaError({"rho_image.divisible: expected " + std::to_string(k) + " entries"});
        for (const Int& d : *delta)
            if (d < 1) throw SemanticError({"rho_image.divisible: divisibilities must be >= 1"});
        sc.rho = RhoImage::from_divisibility(*delta);
    } else if (rj.is_array()) {
        for (std::size_t idx = 0; idx < rj.size(); ++idx) {
            auto v = rd.read_vec(rj[idx], "rho_image[" + std::to_string(idx) + "]");
            if (!v) continue;
            if (v->size() != k) {
                rd.schema_issues.push_back("rho_image[" + std::to_string(idx) + "]: expected " +
                                           std::to_string(k) + " coordinates");
                continue;
            }
            sc.rho.gens.push_back(*v);
        }
        if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
    } else {
        throw SchemaError({"rho_image: expected an array of vectors or {\"divisible\": [...]}"});
    }

    // --- optional fundamental-group data -----------------------------------------
    if (j.contains("pi1")) {
        const json& pi = j["pi1"];
        if (!pi.is_object() || !pi.contains("cyclic"))
            throw SchemaError({"pi1: expected an object with key cyclic"});
        auto n = rd.read_int(pi["cyclic"], "pi1.cyclic");
        if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
        if (*n < 1) throw SemanticError({"pi1.cyclic: order must be >= 1"});
        sc.pi1_cyclic = *n;
    }
    if (j.contains("restriction")) {
        auto m = rd.read_matrix(j["restriction"], "restriction");
        if (!rd.schema_issues.empty()) throw SchemaError(rd.schema_issues);
        sc.restriction = *m;
    }
    return sc;
}

// =====================================================================
// Command dispatch
// =====================================================================

namespace {

json report_group(const FgAbGroup& g) { return group_to_json(g); }

struct Pipeline {
    KernelResult kr;
    DeckGroupResult dg;
};

Pipeline run_pipeline(const Scenario& sc) {
    Pipeline p{compute_K(sc.bd, sc.rho), compute_G_tilde(sc.bd, sc.rho)};
    return p;
}

json kernel_payload(const Scenario& sc, const Pipeline& p) {
    json out;
    out["N"] = report_group(p.kr.N.group);
    json ngens = json::array();
    for (const auto& t : p.kr.N.gens) ngens.push_back(vec_to_json(t));
    out["N"]["generators"] = ngens;
    out["K"] = report_group(p.kr.K);
    out["Gtilde"] = report_group(p.dg.Gtilde);
    return out;
}

std::pair<Decomposition, std::pair<BuildingData, PicardModel>> refined_decomposition(
    const Scenario& sc) {
    auto refined = refine_prime_power(sc.bd, sc.pic);
    ValidationReport rel = check_characteristic_relations(refined.first, refined.second);
    if (!rel.ok()) throw SemanticError(rel.problems);
    Decomposition dec = decompose_divisors(refined.first, refined.second);
    return {std::move(dec), std::move(refined)};
}

ExtensionClass scenario_xi(const Scenario& sc, const Pipeline& p) {
    auto [dec, refined] = refined_decomposition(sc);
    return compute_xi(refined.first, p.kr, dec, sc.coh);
}

json class_json(const ExtensionClass& cls) {
    json out;
    out["ambient"] = report_group(cls.model.group);
    out["coords"] = vec_to_json(cls.value.coords);
    out["is_zero"] = cls.is_zero();
    return out;
}

/// kappa = restriction(xi) in K/nK; identity on coordinates when no
/// restriction matrix is supplied and the identification is forced
/// (K/nK trivial, or the tensor model already equals K/nK... never
/// guessed otherwise).
GroupElement apply_restriction(const Scenario& sc, const ExtensionClass& xi, const Int& n,
                               const FgAbGroup& KmodN) {
    if (sc.restriction) {
        const IntMatrix& m = *sc.restriction;
        if (m.rows() != KmodN.dim() || m.cols() != xi.model.group.dim())
            throw SemanticError({"restriction: expected a " + std::to_string(KmodN.dim()) + " x " +
                                 std::to_string(xi.model.group.dim()) +
                                 " matrix (K/nK from H2 tensor K coordinates)"});
        return GroupElement(KmodN, m.apply(xi.value.coords));
    }
    if (KmodN.is_trivial()) return zero_element(KmodN);
    throw SemanticError({"restriction: required to pass from the H2 tensor K model to "
                         "H^2(pi_1(X), K); supply the matrix in the scenario"});
}

Report finish(const std::string& cmd, json payload, std::string human, bool ok = true) {
    payload["format_version"] = 1;
    payload["command"] = cmd;
    Report rep;
    rep.json = payload.dump(2);
    rep.human = std::move(human);
    rep.ok = ok;
    return rep;
}

std::string describe_group(const FgAbGroup& g) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < g.invariants.size(); ++i) {
        if (i) os << ",";
        os << g.invariants[i];
    }
    os << "]";
    if (g.free_rank) os << " + Z^" << g.free_rank;
    return os.str();
}

}  // namespace

Report run_command(const std::string& cmd, const Scenario& sc) {
    if (cmd == "validate") {
        ValidationReport bd_rep = validate_building_data(sc.bd);
        ValidationReport pic_rep = validate_picard_model(sc.bd, sc.pic);
        ValidationReport rel_rep = check_characteristic_relations(sc.bd, sc.pic);
        json out;
        out["building_data"] = bd_rep.problems;
        out["picard"] = pic_rep.problems;
        out["characteristic_relations"] = rel_rep.problems;
        bool ok = bd_rep.ok() && pic_rep.ok() && rel_rep.ok();
        out["valid"] = ok;
        std::ostringstream os;
        os << "building data: " << (bd_rep.ok() ? "ok" : join_issues(bd_rep.problems)) << "\n"
           << "picard model: " << (pic_rep.ok() ? "ok" : join_issues(pic_rep.problems)) << "\n"
           << "characteristic relations: " << (rel_rep.ok() ? "ok" : join_issues(rel_rep.problems))
           << "\n";
        return finish(cmd, out, os.str(), ok);
    }
    if (cmd == "kernel") {
        Pipeline p = run_pipeline(sc);
        json out = kernel_payload(sc, p);
        std::ostringstream os;
        os << "N = " << describe_group(p.kr.N.group) << "\n"
           << "K = " << describe_group(p.kr.K) << "\n"
           << "Gtilde = " << describe_group(p.dg.Gtilde) << "\n";
        return finish(cmd, out, os.str());
    }
    if (cmd == "gtilde") {
        Pipeline p = run_pipeline(sc);
        json out;
        out["Gtilde"] = report_group(p.dg.Gtilde);
        json gt = json::array();
        for (const auto& e : p.dg.gtilde) gt.push_back(vec_to_json(e.coords));
        out["gtilde_generators"] = gt;
        out["inc_K"] = matrix_to_json(p.dg.inc_K.matrix);
        out["proj_G"] = matrix_to_json(p.dg.proj_G.matrix);
        std::ostringstream os;
        os << "Gtilde = " << describe_group(p.dg.Gtilde) << " with " << p.dg.gtilde.size()
           << " branch generators\n";
        return finish(cmd, out, os.str());
    }
    if (cmd == "decompose") {
        auto [dec, refined] = refined_decomposition(sc);
        json out;
        json ms = json::array();
        for (const auto& m : dec.M) ms.push_back(vec_to_json(m.coords));
        out["M"] = ms;
        out["orders"] = vec_to_json(dec.orders);
        out["C"] = matrix_to_json(dec.C);
        out["columns_in_N"] = true;
        std::ostringstream os;
        os << "decomposition with " << dec.M.size() << " generators, matrix " << dec.C.rows()
           << " x " << dec.C.cols() << "\n";
        return finish(cmd, out, os.str());
    }
    if (cmd == "class") {
        Pipeline p = run_pipeline(sc);
        ExtensionClass xi = scenario_xi(sc, p);
        json out;
        out["xi"] = class_json(xi);
        std::ostringstream os;
        os << "xi in H2 tensor K = " << describe_group(xi.model.group) << ", coords "
           << vec_to_json(xi.value.coords).dump() << (xi.is_zero() ? " (zero)" : " (nonzero)")
           << "\n";
        return finish(cmd, out, os.str());
    }
    if (cmd == "icf") {
        Pipeline p = run_pipeline(sc);
        ExtensionClass xi = scenario_xi(sc, p);
        ExtensionClass icf = compute_icf(sc.bd, sc.pic, p.dg, sc.coh);
        bool consistent = check_xi_icf_consistency(xi, icf, p.dg.inc_K);
        DivisibilityReport div = check_divisibility_vanishing(sc.bd, sc.pic, p.dg, sc.coh);
        json out;
        out["icf"] = class_json(icf);
        out["consistent_with_xi"] = consistent;
        json dd;
        dd["per_branch"] = div.divisible;
        dd["all_divisible"] = div.all_divisible;
        dd["icf_vanishes_by_divisibility"] = div.all_divisible ? json(div.icf_vanishes) : json();
        out["divisibility"] = dd;
        std::ostringstream os;
        os << "i(c(f)) in H2 tensor Gtilde = " << describe_group(icf.model.group) << ", coords "
           << vec_to_json(icf.value.coords).dump() << (icf.is_zero() ? " (zero)" : " (nonzero)")
           << "\n"
           << "consistent with xi: " << (consistent ? "yes" : "NO") << "\n";
        return finish(cmd, out, os.str(), consistent);
    }
    if (cmd == "realize") {
        if (!sc.pi1_cyclic)
            throw SemanticError({"realize: scenario has no pi1 section ({\"cyclic\": n})"});
        const Int n = *sc.pi1_cyclic;
        Pipeline p = run_pipeline(sc);
        ExtensionClass xi = scenario_xi(sc, p);
        QuotientResult kq = mod_n_quotient(p.kr.K, n);
        GroupElement kappa = apply_restriction(sc, xi, n, kq.group);
        auto lift = hom_preimage(kq.projection, kappa.coords);
        if (!lift) throw std::logic_error("realize: kappa has no lift to K");
        CyclicExtension ext = realize_cyclic_extension(n, p.kr.K, GroupElement(p.kr.K, *lift));
        CorollaryReport cor = corollary_conditions(n == 1 ? make_group({}, 0) : make_group({n}, 0),
                                                   sc.bd, p.dg);
        json out;
        out["kappa"] = vec_to_json(kappa.coords);
        out["kappa_ambient"] = report_group(kq.group);
        out["pi1Y"] = report_group(ext.E);
        out["splits"] = ext.splits;
        json cj;
        cj["hom_surjective"] = cor.hom_surjective;
        cj["splits"] = cor.splits;
        cj["hom_trivial"] = cor.hom_trivial;
        cj["i_injective_guaranteed"] = cor.i_injective_guaranteed;
        out["corollary"] = cj;
        std::ostringstream os;
        os << "pi_1(Y) = " << describe_group(ext.E) << (ext.splits ? " (split extension)" : "")
           << "\n";
        return finish(cmd, out, os.str());
    }
    throw SchemaError({"unknown command: " + cmd});
}

}  // namespace cover
