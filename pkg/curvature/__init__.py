from curvature.curvatures import CurvatureReport, betti_curvature, category_curvature, euler_curvature

__all__ = ["CurvatureReport", "betti_curvature", "category_curvature", "euler_curvature"]
