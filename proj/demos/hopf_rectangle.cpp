// Lift a rectangle loop on the sphere-image surface in G_{1,1} and compare
// the holonomy phase with half the enclosed area.

#include <grasshopf/holonomy.hpp>
#include <grasshopf/io.hpp>

#include <iostream>

using namespace ghf;

int main(int argc, char** argv) {
  CMat X(1, 1), Y(1, 1);
  X(0, 0) = 1.0;
  Y(0, 0) = cxd(0, 1);  // Y = iX spans a complex line: the Hopf setting
  const SurfaceSpec surface = make_surface(X, Y);

  LoopSpec loop;
  loop.p = 0.3;
  loop.a = 0.7;
  loop.b = 1.1;
  loop.q = 0.2;

  const ChartLoopRun run = run_chart_loop(surface, loop, 10000);
  std::cout << "classification   " << to_string(surface.tag) << "\n"
            << "area             " << num17(run.hol.area) << "\n"
            << "area (closed)    " << num17(rectangle_area_closed(loop.p, loop.a, loop.b))
            << "\n"
            << "theta            " << num17(run.hol.theta) << "\n"
            << "theta - area/2   " << num17(wrap_angle(run.hol.theta - 0.5 * run.hol.area))
            << "\n"
            << "max orth drift   " << num17(run.lift.max_orth_drift) << "\n";

  if (argc > 1) {
    write_text_file(argv[1], lift_trace_csv(run.cp.path, run.lift));
    std::cout << "lift trace       " << argv[1] << "\n";
  }
  return 0;
}
