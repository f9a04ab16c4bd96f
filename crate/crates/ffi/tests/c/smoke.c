#include <stdio.h>
#include <string.h>

#include "corner.h"

static int expect(int status, const char *what) {
    if (status != CORNER_OK) {
        const char *msg = corner_last_error();
        fprintf(stderr, "%s: status %d: %s\n", what, status, msg ? msg : "(none)");
        return 1;
    }
    return 0;
}

int main(void) {
    CornerCategory *cat = NULL;
    CornerHomology *h = NULL;
    size_t degrees = 0, b0 = 0, b1 = 0, ntors = 0;
    if (expect(corner_category_builtin("G_1", &cat), "builtin")) return 1;
    if (expect(corner_homology(cat, CORNER_THEORY_BRANCHING, 2, &h), "homology")) return 1;
    if (expect(corner_homology_degrees(h, &degrees), "degrees")) return 1;
    if (expect(corner_homology_betti(h, 0, &b0), "betti 0")) return 1;
    if (expect(corner_homology_betti(h, 1, &b1), "betti 1")) return 1;
    if (expect(corner_homology_torsion(h, 1, NULL, 0, &ntors), "torsion")) return 1;
    printf("%zu %zu %zu %zu\n", degrees, b0, b1, ntors);
    if (corner_homology_betti(h, 7, &b0) != CORNER_ERR_RANGE) return 2;
    if (corner_last_error() == NULL || strlen(corner_last_error()) == 0) return 3;
    corner_homology_free(h);
    corner_category_free(cat);
    return 0;
}
