#pragma once
// Domain files, JSON/CSV reports and SVG figures.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hilbert/asdim_cover.hpp"
#include "hilbert/convex_domain.hpp"

namespace hilbert::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "hilbert 1.0.0";

inline Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidArgument, "expected a coordinate array");
  std::vector<double> xs;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, "coordinates must be numbers");
    xs.push_back(v.get<double>());
  }
  return Point::from(xs);
}

inline json point_to_json(const Point& p) {
  json a = json::array();
  for (double v : p.coords()) a.push_back(v);
  return a;
}

/// Parses {"type": "polygon"|"ellipse"|"disk"|"polytope", ...}.
inline BodySpec body_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw Error(ErrorCode::InvalidArgument, "domain spec needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "polygon") {
      PolygonSpec s;
      for (const auto& v : j.at("vertices")) s.vertices.push_back(point_from_json(v));
      return s;
    }
    if (type == "ellipse" || type == "ellipsoid") {
      EllipsoidSpec s;
      s.center = point_from_json(j.at("center"));
      s.semi_axes = j.at("semi_axes").get<std::vector<double>>();
      s.rotation_rad = j.value("rotation_rad", 0.0);
      return s;
    }
    if (type == "disk") {
      return DiskSpec{point_from_json(j.at("center")), j.at("radius").get<double>()};
    }
    if (type == "polytope") {
      PolytopeSpec s;
      for (const auto& h : j.at("halfspaces")) s.halfspaces.push_back({point_from_json(h.at("normal")), h.at("offset").get<double>()});
      return s;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed domain spec: ") + e.what());
  }
  throw Error(ErrorCode::InvalidArgument, "unknown domain type \"" + type + "\"");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BodySpec load_body_spec(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
  return body_spec_from_json(j);
}

/// "x,y[,z...]" -> Point
inline Point parse_point(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad coordinate \"" + item + "\"");
    }
    if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "bad coordinate \"" + item + "\"");
    xs.push_back(v);
  }
  if (xs.empty()) throw Error(ErrorCode::InvalidArgument, "empty point");
  return Point::from(xs);
}

inline std::string marker_kind_name(MarkerKind k) { return k == MarkerKind::X ? "X" : "Y"; }

inline json cover_to_json(const Cover& cover) {
  json j;
  j["R"] = cover.params.big_r;
  j["levels"] = cover.levels;
  j["base"] = point_to_json(cover.base);
  json lv = json::array();
  for (const auto& dec : cover.decompositions) {
    json angles = json::array(), kinds = json::array();
    for (const auto& m : dec.markers) {
      angles.push_back(m.angle);
      kinds.push_back(marker_kind_name(m.kind));
    }
    lv.push_back({{"level", dec.level.index}, {"radius", dec.level.radius}, {"angles", angles}, {"kinds", kinds}});
  }
  j["markers"] = lv;
  json ps = json::array();
  for (const auto& p : cover.pieces)
    ps.push_back({{"level", p.level},
                  {"ordinal", p.ordinal},
                  {"theta_start", p.theta_start},
                  {"theta_end", p.theta_end},
                  {"t_inner", p.t_inner},
                  {"t_outer", p.t_outer}});
  j["pieces"] = ps;
  return j;
}

inline json audit_to_json(const Cover& cover, const CoverAudit& au) {
  json j;
  j["passes"] = au.passes(cover.params.big_r);
  j["diameter_bound"] = au.diameter_bound;
  j["max_piece_diameter"] = au.max_piece_diameter;
  j["piece_diameters"] = au.piece_diameters;
  j["multiplicity"] = {{"max_count", au.multiplicity.max_count},
                       {"bound", 3},
                       {"trials", au.multiplicity.trials},
                       {"histogram", au.multiplicity.histogram}};
  j["arcs"] = {{"min_reach", au.min_arc_reach},
               {"max_diameter", au.max_arc_diameter},
               {"reach_bound", cover.params.big_r},
               {"diameter_bound", 4.0 * cover.params.big_r},
               {"grid_resolution", au.max_grid_step},
               {"tol_arc", au.tol_arc}};
  j["all_odd"] = au.all_odd;
  j["all_admissible"] = au.all_admissible;
  j["markers_well_formed"] = au.all_well_formed;
  return j;
}

/// Per-piece CSV: level,ordinal,theta_start,theta_end,t_inner,t_outer,diameter
inline std::string audit_csv(const Cover& cover, const CoverAudit& au) {
  std::string out = "level,ordinal,theta_start,theta_end,t_inner,t_outer,diameter\n";
  char buf[256];
  for (std::size_t k = 0; k < cover.pieces.size(); ++k) {
    const auto& p = cover.pieces[k];
    std::snprintf(buf, sizeof buf, "%d,%d,%.12f,%.12f,%.12f,%.12f,%.12f\n", p.level, p.ordinal, p.theta_start,
                  p.theta_end, p.t_inner, p.t_outer, au.piece_diameters[k]);
    out += buf;
  }
  return out;
}

/// Maps the body's bounding box onto a 1000x1000 viewport with y flipped.
class SvgCanvas {
 public:
  explicit SvgCanvas(const ConvexBody& body) {
    if (body.dim() != 2) throw Error(ErrorCode::DimensionUnsupported, "figures are planar");
    lo_ = body.bbox_lo();
    const Point hi = body.bbox_hi();
    scale_ = 1000.0 / std::max(hi[0] - lo_[0], hi[1] - lo_[1]);
    top_ = hi[1];
  }

  void comment(const std::string& text) { header_ += "<!-- " + text + " -->\n"; }

  /// Lists the model coordinates of a polyline in the header comment block.
  void coordinate_comment(const std::string& label, const std::vector<Point>& pts) {
    std::string s = label + ":";
    for (const auto& p : pts) s += " (" + fmt(p[0]) + "," + fmt(p[1]) + ")";
    comment(s);
  }

  void polygon(const std::vector<Point>& pts, const std::string& cls, const std::string& fill, const std::string& stroke,
               double stroke_width = 1.0) {
    std::string d;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      d += (k == 0 ? "M" : " L") + fmt(px(pts[k])) + "," + fmt(py(pts[k]));
    }
    d += " Z";
    body_ += "<path class=\"" + cls + "\" d=\"" + d + "\" fill=\"" + fill + "\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt(stroke_width) + "\"/>\n";
  }

  void dot(const Point& p, double radius, const std::string& cls, const std::string& fill) {
    body_ += "<circle class=\"" + cls + "\" cx=\"" + fmt(px(p)) + "\" cy=\"" + fmt(py(p)) + "\" r=\"" + fmt(radius) +
             "\" fill=\"" + fill + "\"/>\n";
  }

  std::string str() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" + header_ +
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n" +
           body_ + "</svg>\n";
  }

  static std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);  // no "-0.000000"
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
  }

 private:
  double px(const Point& p) const { return (p[0] - lo_[0]) * scale_; }
  double py(const Point& p) const { return (top_ - p[1]) * scale_; }

  Point lo_;
  double scale_ = 1.0;
  double top_ = 0.0;
  std::string header_;
  std::string body_;
};

}  // namespace hilbert::io
