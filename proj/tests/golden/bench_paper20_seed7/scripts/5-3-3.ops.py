import json
import sys

from openseespy.opensees import *

wipe()
model('basic', '-ndm', 2, '-ndf', 3)

# nodes and supports
node(1, 0.0, 0.0)
node(2, 6.0, 0.0)
node(3, 0.0, 1.0)
node(4, 6.0, 1.0)
node(5, 0.0, 6.0)
node(6, 6.0, 6.0)
node(7, 0.0, 9.0)
node(8, 6.0, 9.0)
node(9, 0.0, 13.0)
node(10, 6.0, 13.0)
node(11, 0.0, 18.0)
node(12, 6.0, 18.0)
node(13, 12.0, 0.0)
node(14, 12.0, 1.0)
node(15, 12.0, 6.0)
node(16, 12.0, 9.0)
node(17, 18.0, 0.0)
node(18, 18.0, 1.0)
node(19, 18.0, 6.0)
node(20, 18.0, 9.0)
fix(1, 1, 1, 1)
fix(2, 1, 1, 1)
fix(13, 1, 1, 1)
fix(17, 1, 1, 1)
# transformation
geomTransf('Linear', 1)
# elements
element('elasticBeamColumn', 1, 1, 3, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 2, 2, 4, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 3, 3, 4, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 4, 3, 5, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 5, 4, 6, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 6, 5, 6, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 7, 5, 7, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 8, 6, 8, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 9, 7, 8, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 10, 7, 9, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 11, 8, 10, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 12, 9, 10, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 13, 9, 11, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 14, 10, 12, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 15, 11, 12, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 16, 13, 14, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 17, 4, 14, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 18, 14, 15, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 19, 6, 15, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 20, 15, 16, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 21, 8, 16, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 22, 17, 18, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 23, 14, 18, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 24, 18, 19, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 25, 15, 19, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 26, 19, 20, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 27, 16, 20, 0.015, 2e+08, 0.00015, 1)

# loads
timeSeries('Linear', 1)
pattern('Plain', 1, 1)
load(3, 50.0, 0.0, 0.0)
load(5, 50.0, 0.0, 0.0)
load(7, 50.0, 0.0, 0.0)
load(9, 50.0, 0.0, 0.0)
load(11, 50.0, 0.0, 0.0)
eleLoad('-ele', 3, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 6, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 9, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 12, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 15, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 17, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 19, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 21, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 23, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 25, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 27, '-type', '-beamUniform', -10.0)

# analysis
system('BandGeneral')
numberer('RCM')
constraints('Plain')
integrator('LoadControl', 1.0)
algorithm('Linear')
analysis('Static')
ok = analyze(1)
if ok != 0:
    raise SystemExit('analysis failed with code %d' % ok)

# results
FIXED_NODES = [1, 2, 13, 17]
reactions()
out = {'displacements': [], 'reactions': [], 'member_end_forces': []}
for tag in sorted(getNodeTags()):
    ux, uy, rz = nodeDisp(tag)[:3]
    out['displacements'].append({'node': tag, 'ux': ux, 'uy': uy, 'rz': rz})
for tag in FIXED_NODES:
    rx, ry, mz = nodeReaction(tag)[:3]
    out['reactions'].append({'node': tag, 'Rx': rx, 'Ry': ry, 'Mz': mz})
for tag in sorted(getEleTags()):
    f = eleResponse(tag, 'localForce')
    out['member_end_forces'].append({'element': tag, 'N_i': f[0], 'V_i': f[1], 'M_i': f[2],
                                     'N_j': f[3], 'V_j': f[4], 'M_j': f[5]})
with open(sys.argv[1] if len(sys.argv) > 1 else 'result.json', 'w') as fh:
    json.dump(out, fh)
