#include "lab/json_io.hpp"

#include <fstream>

namespace lab {

Json curve_to_json(const SampledCurve& c) {
  Json j;
  j["closed"] = c.closed();
  Json pts = Json::array();
  for (Complex p : c.points()) pts.push_back(Json::array({p.real(), p.imag()}));
  j["points"] = std::move(pts);
  return j;
}

SampledCurve curve_from_json(const Json& j) {
  if (!j.contains("closed") || !j.contains("points"))
    throw InputError("curve json: missing 'closed' or 'points'");
  std::vector<Complex> pts;
  for (const auto& p : j.at("points"))
    pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return SampledCurve(std::move(pts), j.at("closed").get<bool>());
}

Json measure_to_json(const AtomicMeasure& m) {
  Json j;
  j["provenance"] = provenance_name(m.provenance);
  j["base_resolution"] = m.base_resolution;
  Json atoms = Json::array();
  for (const Atom& a : m.atoms)
    atoms.push_back(Json::array({a.pos.real(), a.pos.imag(), a.mass}));
  j["atoms"] = std::move(atoms);
  return j;
}

AtomicMeasure measure_from_json(const Json& j) {
  AtomicMeasure m;
  m.provenance = provenance_from_name(j.at("provenance").get<std::string>());
  m.base_resolution = j.at("base_resolution").get<double>();
  for (const auto& a : j.at("atoms")) {
    double mass = a.at(2).get<double>();
    if (!(mass > 0.0)) throw InputError("measure json: non-positive mass");
    m.atoms.push_back({Complex(a.at(0).get<double>(), a.at(1).get<double>()), mass});
  }
  return m;
}

namespace {
Json profile_to_json(const std::vector<ProfilePoint>& profile) {
  Json arr = Json::array();
  for (const ProfilePoint& p : profile) arr.push_back(Json::array({p.scale, p.value}));
  return arr;
}
}  // namespace

Json regularity_to_json(const RegularityReport& r) {
  Json j;
  j["constant"] = r.constant;
  j["argmax_center"] = Json::array({r.argmax_center.real(), r.argmax_center.imag()});
  j["argmax_radius"] = r.argmax_radius;
  j["r_min"] = r.r_min;
  j["r_max"] = r.r_max;
  j["profile"] = profile_to_json(r.profile);
  if (r.worst_map) {
    j["worst_map"] = {
        {"affine", r.worst_map->affine},
        {"pole", Json::array({r.worst_map->pole.real(), r.worst_map->pole.imag()})},
        {"shift", Json::array({r.worst_map->shift.real(), r.worst_map->shift.imag()})}};
  }
  return j;
}

Json carleson_to_json(const CarlesonReport& r) {
  Json j;
  j["form"] = r.form == CarlesonForm::BoundaryDisk ? "boundary-disk" : "sector";
  j["norm"] = r.norm;
  j["argmax_center"] = Json::array({r.argmax_center.real(), r.argmax_center.imag()});
  j["argmax_scale"] = r.argmax_scale;
  j["r_min"] = r.r_min;
  j["r_max"] = r.r_max;
  j["profile"] = profile_to_json(r.profile);
  return j;
}

Json diagnosis_to_json(const VanishingDiagnosis& d) {
  Json j;
  j["vanishing"] = d.vanishing;
  j["zero_profile"] = d.zero_profile;
  if (!d.zero_profile) {
    j["slope"] = d.slope;
    j["head"] = d.head;
    j["tail"] = d.tail;
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open for reading: " + path);
  Json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for writing: " + path);
  out << text;
}

}  // namespace lab
