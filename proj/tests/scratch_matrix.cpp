// Exploratory driver: prints the verdict matrix for the whole catalog.
#include <iostream>

#include "adtchoice/properties.hpp"
#include "adtchoice/rationality.hpp"
#include "fixtures.hpp"

using namespace adtchoice;

static void row(const std::string& label, const Procedure& P, int leaves, bool tiia_ok) {
  EnumerationBudget b = EnumerationBudget::leaves(leaves);
  std::cout << label << " @" << leaves << "  ";
  std::cout << "EXT=" << verdict_name(check_ext(P, b).verdict) << "  ";
  std::cout << "INT=" << verdict_name(check_int(P, b).verdict) << "  ";
  std::cout << "SIND=" << verdict_name(check_sind(P, b).verdict) << "  ";
  if (tiia_ok) std::cout << "TIIA=" << verdict_name(check_tiia(P, b).verdict) << "  ";
  std::cout << "aE=" << verdict_name(check_alpha_e(P, b).verdict) << "  ";
  std::cout << "gE=" << verdict_name(check_gamma_e(P, b).verdict) << "\n";
  std::cout.flush();
}

int main() {
  const Universe& u3 = fx::uxyz();
  const Universe& u4 = fx::u4();

  row("first_list     ", fx::proc(ProcKind::FirstList, u3, fx::list_schema()), 5, false);
  row("second_list    ", fx::proc(ProcKind::SecondList, u3, fx::list_schema()), 5, false);
  row("sat_list       ",
      fx::proc(ProcKind::SatList, u3, fx::list_schema(), {{"u", "u"}, {"threshold", "0.5"}}), 5,
      false);
  row("maximize(list) ", fx::proc(ProcKind::Maximize, u3, fx::list_schema(), {{"order", "u"}}),
      5, false);
  row("cond_sat       ",
      fx::proc(ProcKind::CondSat, u4, fx::list_schema(), {{"known", "x1,x3"}, {"order", "u"}}),
      6, false);
  row("default_large  ",
      fx::proc(ProcKind::DefaultLarge, u4, fx::list_schema(),
               {{"default", "x4"}, {"n", "2"}, {"order", "u"}}),
      6, false);

  row("first_list2    ", fx::proc(ProcKind::FirstList2, u3, fx::list2_schema()), 5, true);
  row("second_list2   ", fx::proc(ProcKind::SecondList2, u3, fx::list2_schema()), 5, true);
  row("sat_list2      ",
      fx::proc(ProcKind::SatList2, u3, fx::list2_schema(), {{"u", "u"}, {"threshold", "0.5"}}),
      5, true);
  row("avoid          ",
      fx::proc(ProcKind::Avoid, u3, fx::list2_schema(), {{"avoid", "x"}, {"n", "2"}}), 5, true);
  row("maximize(l2)   ", fx::proc(ProcKind::Maximize, u3, fx::list2_schema(), {{"order", "u"}}),
      5, true);

  row("leftmost_tree  ", fx::proc(ProcKind::LeftmostTree, u3, fx::tree_schema()), 6, true);
  row("circular_max   ",
      fx::proc(ProcKind::Maximize, u3, fx::tree_schema(), {{"relation", "x>y,y>z,z>x"}}), 6,
      true);
  row("maximize(tree) ", fx::proc(ProcKind::Maximize, u3, fx::tree_schema(), {{"order", "u"}}),
      6, true);
  row("bias_large n=3 ",
      fx::proc(ProcKind::BiasLarge, u3, fx::tree_schema(), {{"n", "3"}, {"order", "u"}}), 6,
      true);
  row("bias_small n=1 ",
      fx::proc(ProcKind::BiasSmall, u3, fx::tree_schema(), {{"n", "1"}, {"order", "u"}}), 7,
      true);
  row("wine_checklist ", fx::proc(ProcKind::WineChecklist, fx::wines4(), fx::wines_schema()), 6,
      false);

  Guarantee sorted_u = Guarantee::sorted_by("u", true);
  Procedure sat = fx::proc(ProcKind::SatList, u3, fx::list_schema(),
                           {{"u", "u"}, {"threshold", "0.5"}});
  EnumerationBudget b5 = EnumerationBudget::leaves(5);
  std::cout << "sat_list+sorted EXT=" << verdict_name(check_ext(sat, b5, sorted_u).verdict)
            << " aE=" << verdict_name(check_alpha_e(sat, b5, sorted_u).verdict)
            << " gE=" << verdict_name(check_gamma_e(sat, b5, sorted_u).verdict) << "\n";

  auto cls = [&](const std::string& label, const Procedure& P, int leaves,
                 std::optional<Guarantee> g = {}) {
    try {
      RationalityVerdict v = classify_procedure(P, EnumerationBudget::leaves(leaves), g);
      std::cout << label << "  CFI=" << verdict_name(v.cfi)
                << " CF=" << (v.cf_rationalizable ? "yes" : "no ")
                << " CC=" << (v.cc_rationalizable ? "yes" : "no ");
      if (v.cf_relation) std::cout << "  cf: " << v.cf_relation->to_string(P.universe());
      if (v.cc_relation) std::cout << "  cc: " << v.cc_relation->to_string(P.universe());
      std::cout << "\n";
    } catch (const std::exception& e) {
      std::cout << label << "  EXCEPTION: " << e.what() << "\n";
    }
    std::cout.flush();
  };

  cls("classify maximize   ", fx::proc(ProcKind::Maximize, u3, fx::list_schema(), {{"order", "u"}}), 5);
  cls("classify sat_list   ", sat, 5);
  cls("classify first_list ", fx::proc(ProcKind::FirstList, u3, fx::list_schema()), 5);
  cls("classify second_list", fx::proc(ProcKind::SecondList, u3, fx::list_schema()), 5);
  cls("classify default_lrg",
      fx::proc(ProcKind::DefaultLarge, u4, fx::list_schema(),
               {{"default", "x4"}, {"n", "2"}, {"order", "u"}}),
      6);
  cls("classify cond_sat   ",
      fx::proc(ProcKind::CondSat, u4, fx::list_schema(), {{"known", "x1,x3"}, {"order", "u"}}),
      6);
  cls("classify sat_list2  ",
      fx::proc(ProcKind::SatList2, u3, fx::list2_schema(), {{"u", "u"}, {"threshold", "0.5"}}),
      5);
  cls("classify avoid      ",
      fx::proc(ProcKind::Avoid, u3, fx::list2_schema(), {{"avoid", "x"}, {"n", "2"}}), 5);
  cls("classify first_l2   ", fx::proc(ProcKind::FirstList2, u3, fx::list2_schema()), 5);
  cls("classify second_l2  ", fx::proc(ProcKind::SecondList2, u3, fx::list2_schema()), 5);
  cls("classify leftmost   ", fx::proc(ProcKind::LeftmostTree, u3, fx::tree_schema()), 5);
  cls("classify circular   ",
      fx::proc(ProcKind::Maximize, u3, fx::tree_schema(), {{"relation", "x>y,y>z,z>x"}}), 5);
  cls("classify bias_large ",
      fx::proc(ProcKind::BiasLarge, u3, fx::tree_schema(), {{"n", "3"}, {"order", "u"}}), 5);
  cls("classify bias_small ",
      fx::proc(ProcKind::BiasSmall, u3, fx::tree_schema(), {{"n", "1"}, {"order", "u"}}), 5);
  cls("classify wine       ", fx::proc(ProcKind::WineChecklist, fx::wines4(), fx::wines_schema()), 5);
  cls("classify sat+sorted ", sat, 5, sorted_u);
  cls("classify lifted_max ",
      fx::proc(ProcKind::Lifted, u3, fx::list_schema(),
               {{"choice", "x:x;y:y;z:z;x,y:y;x,z:z;y,z:y;x,y,z:y"}}),
      5);
  return 0;
}
