#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>

#include "tva/functor.hpp"
#include "tva/parser.hpp"
#include "tva/vacuum.hpp"

namespace {

using namespace tva;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  }
};

int finish_report(const Report& rep, bool json, const Timer& timer) {
  if (json) {
    std::cout << rep.to_json() << "\n";
  } else {
    std::cout << rep.summary() << "\n";
    std::cout << "elapsed: " << timer.ms() << " ms\n";
  }
  return rep.passed() ? 0 : 1;
}

LieAlgebraPtr load_lie(const std::string& preset, const std::string& file) {
  if (!file.empty()) return LieAlgebra::load(file);
  return LieAlgebra::preset(preset);
}

std::pair<int, int> parse_range(const std::string& text) {
  size_t dots = text.find("..");
  if (dots == std::string::npos) throw Error("range must look like '-3..3'");
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

/// Default verification battery: every basis J field with u = 1, the level
/// field, and fiber-variable dressed fields when the fiber is nontrivial.
std::vector<FieldSpec> default_fields(const LieAlgebraPtr& lie, const RingSpecPtr& spec) {
  std::vector<FieldSpec> out;
  RingElement one = RingElement::one(spec);
  for (int i = 0; i < lie->dim(); ++i)
    out.push_back(FieldSpec::make_J(LieElement::basis(lie, i), one));
  out.push_back(FieldSpec::make_Kdt(lie, one));
  int t = *spec->t_index();
  for (int v = 0; v < spec->arity(); ++v) {
    if (v == t) continue;
    RingElement x = RingElement::variable(spec, v);
    out.push_back(FieldSpec::make_J(LieElement::basis(lie, 0), x));
    out.push_back(FieldSpec::make_Kdt(lie, x));
    out.push_back(FieldSpec::make_Kom(
        lie, KaehlerElement::form(spec, Exponent::zero(spec->arity()), v)));
    if (spec->var(v).invertible) {
      out.push_back(FieldSpec::make_J(LieElement::basis(lie, lie->dim() - 1),
                                      RingElement::variable(spec, v, -1)));
      out.push_back(FieldSpec::make_Kom(
          lie, KaehlerElement::form(spec, Exponent::zero(spec->arity()) - Exponent::unit(spec->arity(), v), v)));
    }
  }
  return out;
}

std::vector<FieldSpec> field_list(const std::string& fields_arg, const ParseContext& ctx) {
  if (fields_arg.empty()) return default_fields(ctx.lie, ctx.spec);
  std::vector<FieldSpec> out;
  size_t pos = 0;
  while (pos <= fields_arg.size()) {
    size_t next = fields_arg.find(',', pos);
    std::string one =
        next == std::string::npos ? fields_arg.substr(pos) : fields_arg.substr(pos, next - pos);
    if (!one.empty()) out.push_back(parse_field_spec(one, ctx));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toroidal vertex algebra toolkit"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine readable canonical JSON output");

  std::string ring_arg = "laurent:t;t=t";
  std::string target_ring_arg;
  std::string lie_arg = "sl2";
  std::string lie_file;
  std::string expr_arg, a_arg, b_arg, box_arg = "-3..3", modes_arg, fields_arg;
  std::string f1_arg, f2_arg, hom_arg = "t -> t", chi_arg, level_arg = "1";
  int bound = 3, max_weight = 3, mode_bound = 3, awin = 1, gen_t = 2, gen_a = 1;

  auto add_ring = [&](CLI::App* cmd) {
    cmd->add_option("--ring", ring_arg, "ring spec, e.g. 'laurent:t,x;t=t'");
  };
  auto add_lie = [&](CLI::App* cmd) {
    cmd->add_option("--lie", lie_arg, "Lie algebra preset (sl2, sl3)");
    cmd->add_option("--lie-file", lie_file, "Lie algebra description file");
  };

  auto* validate = app.add_subcommand("validate", "validate a Lie algebra");
  auto* validate_lie_cmd = validate->add_subcommand("lie", "check the Lie axioms");
  std::string preset = "sl2";
  validate_lie_cmd->add_option("--preset", preset, "preset name");
  validate_lie_cmd->add_option("--file", lie_file, "algebra file");

  auto* bracket_cmd = app.add_subcommand("bracket", "bracket of two toroidal elements");
  add_ring(bracket_cmd);
  add_lie(bracket_cmd);
  bracket_cmd->add_option("--a", a_arg, "left element")->required();
  bracket_cmd->add_option("--b", b_arg, "right element")->required();

  auto* nf_cmd = app.add_subcommand("nf", "normal form in Omega^1/dR");
  add_ring(nf_cmd);
  nf_cmd->add_option("--expr", expr_arg, "differential form expression")->required();

  auto* dim_cmd = app.add_subcommand("dim", "graded dimensions of Omega^1/dR");
  add_ring(dim_cmd);
  dim_cmd->add_option("--box", box_arg, "degree range per variable, e.g. '-3..3'");

  auto* act_cmd = app.add_subcommand("act", "apply field modes to the vacuum");
  add_ring(act_cmd);
  add_lie(act_cmd);
  act_cmd->add_option("--modes", modes_arg, "mode applications, right to left")->required();

  auto* ope_cmd = app.add_subcommand("ope", "commutator and locality of two fields");
  add_ring(ope_cmd);
  add_lie(ope_cmd);
  ope_cmd->add_option("--f1", f1_arg, "first field")->required();
  ope_cmd->add_option("--f2", f2_arg, "second field")->required();
  ope_cmd->add_option("--max-weight", max_weight, "state weight bound");
  ope_cmd->add_option("--mode-bound", mode_bound, "mode window bound");
  ope_cmd->add_option("--awin", awin, "fiber exponent window for states");

  auto* character_cmd = app.add_subcommand("character", "graded ranks of V(ghat) over Q[k]");
  add_lie(character_cmd);
  character_cmd->add_option("--max-weight", max_weight, "top weight");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  auto* v_jacobi = verify->add_subcommand("jacobi", "Jacobi identity for ghat_R");
  auto* v_cocycle = verify->add_subcommand("cocycle", "cocycle identities of phi");
  auto* v_h0 = verify->add_subcommand("h0", "H^0 bracket identification");
  auto* v_module = verify->add_subcommand("module", "two-path module axiom");
  auto* v_locality = verify->add_subcommand("locality", "locality with N = 2");
  auto* v_translation = verify->add_subcommand("translation", "translation axiom");
  auto* v_vacuum = verify->add_subcommand("vacuum", "vacuum axiom and well-definedness");
  auto* v_functor = verify->add_subcommand("functor", "induced hom intertwines");
  auto* v_sugawara = verify->add_subcommand("sugawara", "Segal-Sugawara operators");
  for (CLI::App* cmd : {v_jacobi, v_cocycle, v_h0, v_module, v_locality, v_translation,
                        v_vacuum, v_functor, v_sugawara}) {
    add_ring(cmd);
    add_lie(cmd);
    cmd->add_option("--bound", bound, "homogeneous generator degree bound");
    cmd->add_option("--max-weight", max_weight, "state weight bound");
    cmd->add_option("--mode-bound", mode_bound, "mode window bound");
    cmd->add_option("--awin", awin, "fiber exponent window for states");
    cmd->add_option("--gen-t-bound", gen_t, "generator t-exponent bound");
    cmd->add_option("--gen-a-bound", gen_a, "generator fiber exponent bound");
    cmd->add_option("--fields", fields_arg, "comma separated field list");
  }
  v_functor->add_option("--target-ring", target_ring_arg, "target ring spec");
  v_functor->add_option("--hom", hom_arg, "fiber hom, e.g. 'x -> y^2; t -> t'");
  v_sugawara->add_option("--level", level_arg, "level K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Timer timer;
    if (validate_lie_cmd->parsed()) {
      LieAlgebraPtr L = load_lie(preset, lie_file);
      LieValidation v = validate_lie(*L);
      Report rep;
      rep.name = "validate_lie";
      rep.checked = v.checks;
      rep.failed = static_cast<long>(v.failures.size());
      for (const auto& f : v.failures)
        if (rep.failures.size() < Report::kMaxStoredFailures)
          rep.failures.push_back({"lie axiom", f, "", "", false});
      return finish_report(rep, json, timer);
    }

    RingSpecPtr spec = RingSpec::parse(ring_arg);
    LieAlgebraPtr lie = load_lie(lie_arg, lie_file);
    ParseContext ctx{spec, lie};

    if (bracket_cmd->parsed()) {
      ParsedElement a = parse_element(a_arg, ctx);
      ParsedElement b = parse_element(b_arg, ctx);
      if (a.kind != ParsedElement::Kind::Toroidal && a.kind != ParsedElement::Kind::Form)
        throw Error("--a must be a toroidal element");
      auto as_toroidal = [&](ParsedElement& e) {
        if (e.kind == ParsedElement::Kind::Toroidal) return *e.toroidal;
        return ToroidalElement::central(lie, normal_form(*e.form));
      };
      ToroidalElement out = bracket_hat(as_toroidal(a), as_toroidal(b));
      std::cout << out.to_string() << "\n";
      return 0;
    }
    if (nf_cmd->parsed()) {
      ParsedElement e = parse_element(expr_arg, ctx);
      CentralClass c = CentralClass::zero(spec);
      if (e.kind == ParsedElement::Kind::Form)
        c = normal_form(*e.form);
      else if (e.kind == ParsedElement::Kind::Ring && e.ring->is_zero())
        c = CentralClass::zero(spec);
      else
        throw Error("--expr must be a differential form");
      std::cout << c.to_string() << "\n";
      return 0;
    }
    if (dim_cmd->parsed()) {
      auto [lo, hi] = parse_range(box_arg);
      DegreeBox box{Exponent(std::vector<int>(spec->arity(), lo)),
                    Exponent(std::vector<int>(spec->arity(), hi))};
      auto dims = graded_dimension(spec, box);
      if (json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [m, d] : dims) {
          nlohmann::json row;
          row["degree"] = monomial_to_string(*spec, m);
          row["dim"] = d;
          rows.push_back(row);
        }
        std::cout << rows.dump(2) << "\n";
      } else {
        for (const auto& [m, d] : dims)
          std::cout << monomial_to_string(*spec, m) << " : " << d << "\n";
      }
      return 0;
    }
    if (act_cmd->parsed()) {
      auto modes = parse_mode_list(modes_arg, ctx);
      Straightener s(lie, spec);
      VacuumState v = VacuumState::vacuum(lie, spec);
      for (size_t i = modes.size(); i-- > 0;)
        v = s.act(field_mode(modes[i].first, modes[i].second), v);
      std::cout << (json ? v.to_json() : v.to_string()) << "\n";
      return 0;
    }
    if (ope_cmd->parsed()) {
      FieldSpec f1 = parse_field_spec(f1_arg, ctx);
      FieldSpec f2 = parse_field_spec(f2_arg, ctx);
      StateEnumeration opt{max_weight, awin, 0};
      Report rep = commutator_check(f1, f2, max_weight, mode_bound, opt);
      Report loc = locality_check(f1, f2, max_weight, mode_bound, opt);
      rep.merge(loc);
      rep.name = "ope";
      return finish_report(rep, json, timer);
    }
    if (character_cmd->parsed()) {
      RingSpecPtr affine = RingSpec::parse("laurent:t;t=t");
      auto ranks = character(lie, affine, max_weight);
      std::cout << nlohmann::json(ranks).dump() << "\n";
      return 0;
    }
    if (v_jacobi->parsed()) return finish_report(jacobi_suite(lie, spec, bound), json, timer);
    if (v_cocycle->parsed()) return finish_report(cocycle_check(lie, spec, bound), json, timer);
    if (v_h0->parsed()) return finish_report(h0_iso_check(lie, spec, bound), json, timer);
    if (v_module->parsed()) {
      StateEnumeration opt{max_weight, awin, 0};
      return finish_report(module_axiom_check(lie, spec, gen_t, gen_a, opt), json, timer);
    }
    if (v_locality->parsed() || v_translation->parsed() || v_vacuum->parsed()) {
      auto fields = field_list(fields_arg, ctx);
      StateEnumeration opt{max_weight, awin, 0};
      Report all;
      for (size_t i = 0; i < fields.size(); ++i) {
        if (v_vacuum->parsed()) {
          all.merge(vacuum_axiom_check(fields[i], mode_bound + 2, bound));
          continue;
        }
        if (v_translation->parsed()) {
          all.merge(translation_axiom_check(fields[i], max_weight, mode_bound, opt));
          continue;
        }
        for (size_t j = i; j < fields.size(); ++j)
          all.merge(locality_check(fields[i], fields[j], max_weight, mode_bound, opt));
      }
      all.name = v_vacuum->parsed() ? "vacuum" : (v_translation->parsed() ? "translation" : "locality");
      return finish_report(all, json, timer);
    }
    if (v_functor->parsed()) {
      RingSpecPtr target = target_ring_arg.empty() ? spec : RingSpec::parse(target_ring_arg);
      RingHom base = RingHom::parse(hom_arg, spec, target);
      InducedHom h = InducedHom::make(base, lie);
      StateEnumeration opt{max_weight, awin, 0};
      Report rep = hom_intertwines_check(h, max_weight, gen_t, gen_a, opt);
      if (spec->arity() == 1) rep.merge(embedding_check(h, max_weight));
      rep.name = "functor";
      return finish_report(rep, json, timer);
    }
    if (v_sugawara->parsed()) {
      SugawaraReport sr =
          sugawara_check(lie, RingSpec::parse("laurent:t;t=t"), rational_from_string(level_arg),
                         max_weight);
      return finish_report(sr.report, json, timer);
    }
    std::cerr << "no subcommand handled\n";
    return 2;
  } catch (const tva::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
