from sklearn.svm import SVC

clf = SVC(C=1.0, kernel="rbf")  # expect: SK04
