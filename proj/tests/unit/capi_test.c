/* Exercises the shared library through its C header only. */
#include <chroma/chroma.h>

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

int main(void) {
    chroma_graph* t = NULL;
    EXPECT(chroma_graph_tensor(3, 2, 0, &t) == CHROMA_OK);
    EXPECT(chroma_graph_vertex_count(t) == 9);
    EXPECT(chroma_graph_degree(t) == 4);
    double l2 = 0;
    EXPECT(chroma_lambda2(t, &l2) == CHROMA_OK);
    EXPECT(fabs(l2 - 0.25) < 1e-9);

    chroma_codeset* coords = NULL;
    EXPECT(chroma_coordinate_colorings(t, &coords) == CHROMA_OK);
    EXPECT(chroma_codeset_size(coords) == 2);
    chroma_coloring* x = NULL;
    chroma_coloring* y = NULL;
    EXPECT(chroma_codeset_member(coords, 0, &x) == CHROMA_OK);
    EXPECT(chroma_codeset_member(coords, 1, &y) == CHROMA_OK);
    uint64_t d = 0;
    uint16_t sigma[3];
    EXPECT(chroma_distance(x, y, &d, sigma) == CHROMA_OK);
    EXPECT(d == 6);
    EXPECT(chroma_set_delta(coords, "2/3") == CHROMA_OK);
    int ok = 0;
    uint64_t min_dist = 0;
    EXPECT(chroma_verify_delta(coords, 1, &ok, &min_dist, NULL, NULL) == CHROMA_OK);
    EXPECT(ok == 1 && min_dist == 6);

    /* Error path: status code plus message. */
    chroma_graph* bad = NULL;
    EXPECT(chroma_graph_cycle(2, &bad) == CHROMA_DUPLICATE_EDGE);
    EXPECT(bad == NULL);
    EXPECT(strlen(chroma_last_error()) > 0);
    EXPECT(strcmp(chroma_status_name(CHROMA_NOT_CUBIC), "NotCubic") == 0);
    chroma_graph* k3 = NULL;
    EXPECT(chroma_graph_complete(3, &k3) == CHROMA_OK);
    chroma_graph* gadget = NULL;
    EXPECT(chroma_graph_gadget(k3, &gadget) == CHROMA_NOT_CUBIC);
    EXPECT(chroma_lambda2(NULL, &l2) == CHROMA_INVALID_ARGUMENT);

    char* json = NULL;
    EXPECT(chroma_certify_json(3, "2/3", "1/5", &json) == CHROMA_OK);
    EXPECT(json && strstr(json, "\"certified\":true"));
    chroma_string_free(json);
    EXPECT(chroma_certify_json(3, "1/3", "1/5", &json) == CHROMA_OUT_OF_RANGE);
    EXPECT(chroma_certify_json(3, "abc", "1/5", &json) == CHROMA_PARSE);

    chroma_graph* c5 = NULL;
    EXPECT(chroma_graph_cycle(5, &c5) == CHROMA_OK);
    EXPECT(chroma_exact_f_json(c5, 3, "1/5", &json) == CHROMA_OK);
    EXPECT(json && strstr(json, "\"size\":5"));
    chroma_string_free(json);

    chroma_graph* k4 = NULL;
    EXPECT(chroma_graph_complete(4, &k4) == CHROMA_OK);
    EXPECT(chroma_graph_gadget(k4, &gadget) == CHROMA_OK);
    chroma_codeset* packed = NULL;
    int exhausted = 0;
    EXPECT(chroma_pack(gadget, "gadget", 3, -1.0, "11/20", 100, 2000, 1, &packed, &exhausted) == CHROMA_OK);
    EXPECT(chroma_codeset_size(packed) >= 2);
    EXPECT(chroma_verify_delta(packed, 2, &ok, NULL, NULL, NULL) == CHROMA_OK && ok == 1);

    const uint32_t edges[] = {0, 1, 1, 2, 2, 0};
    chroma_graph* tri = NULL;
    EXPECT(chroma_graph_from_edges(3, edges, 3, NULL, &tri) == CHROMA_OK);
    const uint16_t colors[] = {0, 0, 1};
    chroma_coloring* c = NULL;
    EXPECT(chroma_coloring_create(tri, 3, colors, 3, &c) == CHROMA_OK);
    uint32_t u = 9, v = 9;
    EXPECT(chroma_is_proper(tri, c, &ok, &u, &v) == CHROMA_OK);
    EXPECT(ok == 0 && u == 0 && v == 1);

    chroma_coloring_free(c);
    chroma_graph_free(tri);
    chroma_codeset_free(packed);
    chroma_graph_free(gadget);
    chroma_graph_free(k4);
    chroma_graph_free(c5);
    chroma_graph_free(k3);
    chroma_coloring_free(x);
    chroma_coloring_free(y);
    chroma_codeset_free(coords);
    chroma_graph_free(t);
    if (failures) fprintf(stderr, "%d failures\n", failures);
    else printf("capi: all checks passed\n");
    return failures ? 1 : 0;
}
