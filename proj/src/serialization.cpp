#include "geomkit/serialization.hpp"

#include <sstream>

#include "geomkit/error.hpp"

namespace geomkit {

namespace {

template <class F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed ") + what + ": " + e.what());
  }
}

Json ids_json(const PointSet& s) { return Json(to_ids(s)); }

PointSet ids_set(std::size_t n, const Json& j) { return to_set(n, j.get<std::vector<PointId>>()); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

Matrix matrix_from(const Field& K, const Json& j) {
  const auto rows = j.get<std::vector<Vec>>();
  if (rows.empty() || rows[0].empty()) fail(ErrorKind::InvalidInput, "empty matrix");
  for (const auto& r : rows) {
    if (r.size() != rows[0].size()) fail(ErrorKind::InvalidInput, "ragged matrix");
    for (Elem e : r)
      if (e >= K->order()) fail(ErrorKind::InvalidInput, "matrix entry outside GF(" + K->name() + ")");
  }
  return Matrix::from_rows(K, rows);
}

Field field_from(const Json& j) { return field_parse(j.is_string() ? j.get<std::string>() : std::to_string(j.get<int>())); }

Json all_flats(const Geometry& g) {
  Json flats = Json::array();
  for (FlatId f = 0; f < g.flat_count(); ++f) flats.push_back(g.flat_points(f));
  return flats;
}

void render(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar_array = [](const Json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    out << pad << (j.is_object() ? it.key() : std::string("-"));
    if (v.is_object() || (v.is_array() && !scalar_array(v) && !v.empty())) {
      out << (j.is_object() ? ":" : "") << "\n";
      render(out, v, indent + 1);
    } else {
      out << (j.is_object() ? ": " : " ") << v.dump() << "\n";
    }
  }
}

}  // namespace

Json geometry_to_json(const Geometry& g) {
  switch (g.backend()) {
    case Backend::Affine:
    case Backend::Projective:
      return Json{{"kind", g.backend() == Backend::Affine ? "affine" : "projective"},
                  {"q", g.field()->name()},
                  {"dim", g.space_dim()}};
    case Backend::Explicit: {
      Json flats = Json::array();
      for (const auto& f : g.declared_flats()) flats.push_back(to_ids(f));
      return Json{{"kind", "explicit"}, {"points", g.labels()}, {"flats", flats}};
    }
    case Backend::Quotient:
      return Json{{"kind", "explicit"},
                  {"points", g.labels()},
                  {"flats", all_flats(g)},
                  {"quotient_of", geometry_to_json(*g.parent())},
                  {"E", ids_json(g.exceptional())}};
    default:
      return Json{{"kind", "explicit"}, {"points", g.labels()}, {"flats", all_flats(g)}};
  }
}

GeometryPtr geometry_from_json(const Json& j) {
  return guarded("geometry", [&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "affine" || kind == "projective") {
      const int dim = j.at("dim").get<int>();
      if (dim < 0) fail(ErrorKind::InvalidInput, "negative dimension");
      const Field K = field_from(j.at("q"));
      return kind == "affine" ? affine_space(K, dim) : projective_space(K, dim);
    }
    if (kind != "explicit") fail(ErrorKind::InvalidInput, "unknown geometry kind '" + kind + "'");
    if (j.contains("quotient_of")) {
      auto parent = geometry_from_json(j.at("quotient_of"));
      return Geometry::make_quotient(parent, ids_set(parent->size(), j.at("E")));
    }
    std::vector<std::string> labels;
    if (j.at("points").is_number_integer()) {
      const auto n = j.at("points").get<std::size_t>();
      for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    } else {
      labels = j.at("points").get<std::vector<std::string>>();
    }
    return Geometry::make_explicit(std::move(labels), j.at("flats").get<std::vector<std::vector<PointId>>>());
  });
}

Json map_to_json(const GeoMap& f) {
  return Json{{"domain", geometry_to_json(*f.domain)}, {"codomain", geometry_to_json(*f.codomain)}, {"images", f.images}};
}

GeoMap map_from_json(const Json& j) {
  return guarded("map", [&] {
    GeoMap f{geometry_from_json(j.at("domain")), geometry_from_json(j.at("codomain")),
             j.at("images").get<std::vector<PointId>>()};
    validate(f);
    return f;
  });
}

Json partial_map_to_json(const PartialGeoMap& f) {
  Json images = Json::object();
  for (PointId x = 0; x < f.images.size(); ++x)
    if (f.images[x] != kNoPoint) images[std::to_string(x)] = f.images[x];
  return Json{{"domain", geometry_to_json(*f.domain)},
              {"codomain", geometry_to_json(*f.codomain)},
              {"exceptional", ids_json(f.exceptional)},
              {"images", images}};
}

PartialGeoMap partial_map_from_json(const Json& j) {
  return guarded("partial map", [&] {
    PartialGeoMap f{geometry_from_json(j.at("domain")), geometry_from_json(j.at("codomain")), {}, {}};
    f.exceptional = ids_set(f.domain->size(), j.at("exceptional"));
    f.images.assign(f.domain->size(), kNoPoint);
    for (const auto& [key, value] : j.at("images").items()) {
      std::size_t pos = 0;
      const auto x = std::stoul(key, &pos);
      if (pos != key.size() || x >= f.domain->size()) fail(ErrorKind::UnknownPoint, "image key '" + key + "'");
      f.images[x] = value.get<PointId>();
    }
    validate(f);
    return f;
  });
}

Json semilinear_to_json(const SemilinearMap& m) {
  return Json{{"matrix", matrix_json(m.matrix)},
              {"sigma", m.sigma.name()},
              {"source", m.sigma.source()->name()},
              {"target", m.sigma.target()->name()}};
}

SemilinearMap semilinear_from_json(const Json& j) {
  return guarded("semilinear map", [&] {
    const Field K = field_from(j.at("source"));
    const Field K2 = j.contains("target") ? field_from(j.at("target")) : K;
    return SemilinearMap{matrix_from(K2, j.at("matrix")),
                         field_morphism_by_name(K, K2, j.value("sigma", std::string("identity")))};
  });
}

Json semiaffine_to_json(const SemiaffineDecomposition& d) {
  Json j = semilinear_to_json(d.differential);
  j["translation"] = d.translation;
  return j;
}

SemiaffineDecomposition semiaffine_from_json(const Json& j) {
  return guarded("semiaffine map", [&] {
    SemiaffineDecomposition d{semilinear_from_json(j), j.at("translation").get<Vec>()};
    if (d.translation.size() != d.differential.matrix.rows())
      fail(ErrorKind::InvalidInput, "translation length does not match the matrix");
    return d;
  });
}

Json fractional_to_json(const FractionalDecomposition& d) {
  return Json{{"psi", semilinear_to_json(d.psi)}, {"omega", semilinear_to_json(d.omega)}};
}

FractionalDecomposition fractional_from_json(const Json& j) {
  return guarded("fractional map", [&] {
    FractionalDecomposition d{semilinear_from_json(j.at("psi")), semilinear_from_json(j.at("omega"))};
    if (!(d.psi.sigma == d.omega.sigma)) fail(ErrorKind::InvalidInput, "psi and omega must share sigma");
    if (d.omega.matrix.rows() != 1 || d.omega.matrix.cols() != d.psi.matrix.cols())
      fail(ErrorKind::InvalidInput, "omega must be a 1 x n matrix");
    return d;
  });
}

SyntheticIncidence synthetic_from_json(const Json& j) {
  return guarded("synthetic incidence", [&] {
    SyntheticIncidence s;
    if (j.at("points").is_number_integer()) {
      for (std::size_t i = 0; i < j.at("points").get<std::size_t>(); ++i) s.labels.push_back(std::to_string(i));
    } else {
      s.labels = j.at("points").get<std::vector<std::string>>();
    }
    s.lines = j.at("lines").get<std::vector<std::vector<PointId>>>();
    s.parallel_class = j.at("parallel_class").get<std::vector<int>>();
    if (s.parallel_class.size() != s.lines.size())
      fail(ErrorKind::InvalidInput, "one parallel class per line is required");
    for (const auto& l : s.lines)
      for (PointId x : l)
        if (x >= s.size()) fail(ErrorKind::UnknownPoint, "line mentions point " + std::to_string(x));
    return s;
  });
}

Json synthetic_to_json(const SyntheticIncidence& s) {
  return Json{{"points", s.labels}, {"lines", s.lines}, {"parallel_class", s.parallel_class}};
}

Json axiom_report_to_json(const AxiomReport& r) {
  Json axioms = Json::array();
  for (const auto& a : r.results) {
    Json e{{"axiom", a.axiom}, {"pass", a.pass}};
    if (!a.pass) {
      e["detail"] = a.detail;
      e["witness"] = a.witness;
    }
    axioms.push_back(std::move(e));
  }
  return Json{{"all_pass", r.all_pass()}, {"axioms", axioms}};
}

Json morphism_report_to_json(const MorphismReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(Json{{"criterion", v.criterion}, {"holds", v.holds}});
  Json j{{"is_morphism", r.is_morphism}, {"criteria_agree", r.criteria_agree}, {"verdicts", verdicts}};
  if (!r.is_morphism) {
    j["criterion"] = r.criterion;
    j["witness"] = r.witness;
  }
  return j;
}

Json verification_to_json(const VerificationReport& r) {
  return Json{{"theorem", r.theorem},
              {"domain", r.domain},
              {"codomain", r.codomain},
              {"enumerated", r.enumerated},
              {"constructed", r.constructed},
              {"sets_equal", r.sets_equal},
              {"only_enumerated", r.only_enumerated},
              {"only_constructed", r.only_constructed},
              {"search_nodes", r.search.nodes}};
}

Json extension_to_json(const ExtensionResult& r) {
  Json j{{"closure", geometry_to_json(*r.closure.projective)},
         {"hyperplane", ids_json(r.closure.hyperplane)},
         {"embed", r.closure.embed},
         {"hypothesis", r.hypothesis},
         {"success", r.success()}};
  if (r.extension) {
    j["extension"] = partial_map_to_json(*r.extension);
    j["exceptional_is_flat"] = r.exceptional_is_flat;
    j["restriction_ok"] = r.restriction_ok;
    j["b1"] = r.b1b2.b1;
    j["b2"] = r.b1b2.b2;
    j["unique"] = r.unique;
  }
  if (r.witness)
    j["witness"] = Json{{"direction", r.witness->direction},
                        {"direction_coords", r.closure.projective->coords(r.witness->direction)},
                        {"lines", r.witness->lines},
                        {"reason", r.witness->reason}};
  return j;
}

Json make_report(const Json& config, const Json& result) {
  return Json{{"tool", "geomkit"}, {"version", GEOMKIT_VERSION}, {"config", config}, {"result", result}};
}

std::string render_text(const Json& j) {
  std::ostringstream out;
  if (j.is_structured())
    render(out, j, 0);
  else
    out << j.dump() << "\n";
  return out.str();
}

}  // namespace geomkit
